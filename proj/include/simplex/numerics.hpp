/*
 * Copyright 2026 The simplex-explain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SIMPLEX_NUMERICS_HPP_
#define SIMPLEX_NUMERICS_HPP_

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "simplex/error.hpp"

namespace simplex {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline void require_size(Index actual, Index expected, const char* what) {
  if (actual != expected) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(expected) + ", got " +
                         std::to_string(actual));
  }
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& x) {
  return x.allFinite();
}

template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar inner(const Eigen::MatrixBase<DerivedU>& u,
                                const Eigen::MatrixBase<DerivedV>& v) {
  require_size(v.size(), u.size(), "inner");
  typename DerivedU::Scalar sum(0);
  for (Index i = 0; i < u.size(); ++i) sum += u(i) * v(i);
  return sum;
}

template <typename Derived>
typename Derived::Scalar l2_norm(const Eigen::MatrixBase<Derived>& v) {
  using std::sqrt;
  return sqrt(inner(v, v));
}

// Max-shifted so that large inputs do not overflow.
template <typename Derived>
VectorX<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Scalar shift = v.maxCoeff();
  VectorX<Scalar> out = (v.array() - shift).exp().matrix();
  return out / out.sum();
}

template <typename Derived>
VectorX<typename Derived::Scalar> vecsort_asc(
    const Eigen::MatrixBase<Derived>& v) {
  VectorX<typename Derived::Scalar> out = v;
  std::stable_sort(out.data(), out.data() + out.size());
  return out;
}

// Ascending order of values; equal values keep index order.
template <typename Derived>
std::vector<Index> argsort_asc(const Eigen::MatrixBase<Derived>& v) {
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return v(a) < v(b); });
  return idx;
}

// Descending order of values; equal values keep index order.
template <typename Derived>
std::vector<Index> argsort_desc(const Eigen::MatrixBase<Derived>& v) {
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return v(a) > v(b); });
  return idx;
}

// Largest singular value of `a` by power iteration on a^T a. The start
// vector is the column of a^T a with the largest norm, which cannot be
// orthogonal to the dominant eigenvector unless a is zero.
template <typename Derived>
typename Derived::Scalar operator_norm(const Eigen::MatrixBase<Derived>& a,
                                       int max_iters = 10000,
                                       typename Derived::Scalar tol = 1e-13) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  if (max_iters < 1) throw UsageError("operator_norm: max_iters must be >= 1");
  if (!(tol > 0)) throw UsageError("operator_norm: tol must be > 0");
  if (a.size() == 0) return Scalar(0);
  const MatrixX<Scalar> gram = a.transpose() * a;
  Index start = 0;
  const Scalar best = gram.colwise().norm().maxCoeff(&start);
  if (best == Scalar(0)) return Scalar(0);

  VectorX<Scalar> v = gram.col(start) / best;
  Scalar estimate(0);
  for (int it = 0; it < max_iters; ++it) {
    VectorX<Scalar> next = gram * v;
    const Scalar norm = next.norm();
    if (norm == Scalar(0)) break;
    next /= norm;
    // Rayleigh quotient of the normalised iterate.
    const Scalar value = sqrt(next.dot(gram * next));
    v = std::move(next);
    const bool converged = abs(value - estimate) < tol * value;
    estimate = value;
    if (converged) break;
  }
  return estimate;
}

}  // namespace simplex

#endif  // SIMPLEX_NUMERICS_HPP_

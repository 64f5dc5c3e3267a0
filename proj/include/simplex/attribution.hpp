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

#ifndef SIMPLEX_ATTRIBUTION_HPP_
#define SIMPLEX_ATTRIBUTION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "simplex/decomposition.hpp"
#include "simplex/model.hpp"

namespace simplex {

inline constexpr int kDefaultBins = 200;

enum class BaselineKind { kZeroInput, kTrainingMean, kCustom };

std::string to_string(BaselineKind kind);

// Reference point (x0, h0 = g(x0)) anchoring the straight-line paths.
struct Baseline {
  Vector input;
  Vector latent;
  BaselineKind kind = BaselineKind::kCustom;

  static Baseline make(const SplitModel& model, Vector input,
                       BaselineKind kind = BaselineKind::kCustom);
  static Baseline zero(const SplitModel& model);
  // Feature-wise average of `inputs` (one example per row).
  static Baseline training_mean(const SplitModel& model, const Matrix& inputs);
};

// d_H x d_X matrix whose column i is the integrated Jacobian j_i for the path
// x0 -> x_c, using the right-endpoint Riemann sum over n_bins points.
Matrix integrated_jacobian(const SplitModel& model, const Baseline& baseline,
                           const Eigen::Ref<const Vector>& x_c, int n_bins = kDefaultBins);

// C x d_X matrix of projections p^c_i = <h - h0, j^c_i> / ||h - h0||^2,
// accumulated with one pullback per (bin, corpus member) of the covector
// (h - h0) / ||h - h0||^2. Throws NumericalError if h == h0.
Matrix projected_jacobians(const SplitModel& model,
                           const Eigen::Ref<const Vector>& h,
                           const Baseline& baseline,
                           const Eigen::Ref<const Matrix>& corpus_inputs,
                           int n_bins = kDefaultBins, int jobs = 1);

// Integrated Gradients of logit `output_index` on the same Riemann grid.
Vector integrated_gradients(const SplitModel& model, const Baseline& baseline,
                            const Eigen::Ref<const Vector>& x_c, Index output_index,
                            int n_bins = kDefaultBins);

// || sum_c w^c sum_i j^c_i - (h - h0) ||.
double completeness_check(const std::vector<Matrix>& jacobians,
                          const Eigen::Ref<const Vector>& weights,
                          const Eigen::Ref<const Vector>& h,
                          const Baseline& baseline);

struct AttributionResult {
  Matrix projections;           // C x d_X
  Matrix weighted_projections;  // w^c p^c_i
  std::optional<std::vector<Matrix>> jacobians;
  int n_bins = kDefaultBins;

  // sum_{c,i} w^c p^c_i
  double total() const { return weighted_projections.sum(); }
};

AttributionResult attribute(const SplitModel& model,
                            const Eigen::Ref<const Vector>& h,
                            const Baseline& baseline, const Corpus& corpus,
                            const Eigen::Ref<const Vector>& weights,
                            int n_bins = kDefaultBins,
                            bool keep_jacobians = false, int jobs = 1);

}  // namespace simplex

#endif  // SIMPLEX_ATTRIBUTION_HPP_

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

#include "simplex/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simplex/rng.hpp"

namespace simplex {

double r2_score(const Eigen::Ref<const Matrix>& truths,
                const Eigen::Ref<const Matrix>& approxs) {
  if (truths.rows() != approxs.rows() || truths.cols() != approxs.cols()) {
    throw DimensionError("r2_score: truth and approximation shapes differ");
  }
  if (truths.rows() < 2) throw DataError("r2_score needs at least two pairs");
  const Eigen::RowVectorXd mean = truths.colwise().mean();
  double residual = 0.0;
  double spread = 0.0;
  for (Index r = 0; r < truths.rows(); ++r) {
    residual += (truths.row(r) - approxs.row(r)).squaredNorm();
    spread += (truths.row(r) - mean).squaredNorm();
  }
  if (spread == 0.0) throw DataError("r2_score: all truths are identical");
  return 1.0 - residual / spread;
}

bool DetectionCurve::valid() const {
  Index previous = 0;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    const Index bound = std::min(static_cast<Index>(n + 1), outliers_total);
    if (counts[n] < previous || counts[n] > bound) return false;
    previous = counts[n];
  }
  return counts.empty() ? outliers_total == 0 : counts.back() == outliers_total;
}

namespace {

DetectionCurve accumulate(const std::vector<Index>& order,
                          const std::vector<bool>& outlier_flags) {
  DetectionCurve curve;
  curve.outliers_total =
      static_cast<Index>(std::count(outlier_flags.begin(), outlier_flags.end(), true));
  curve.counts.reserve(order.size());
  Index found = 0;
  for (Index i : order) {
    if (outlier_flags[static_cast<std::size_t>(i)]) ++found;
    curve.counts.push_back(found);
  }
  return curve;
}

}  // namespace

DetectionCurve detection_curve(const Eigen::Ref<const Vector>& scores,
                               const std::vector<bool>& outlier_flags) {
  require_size(static_cast<Index>(outlier_flags.size()), scores.size(),
               "outlier flags");
  return accumulate(argsort_desc(scores), outlier_flags);
}

DetectionCurve ideal_curve(const std::vector<bool>& outlier_flags) {
  Vector scores(static_cast<Index>(outlier_flags.size()));
  for (std::size_t i = 0; i < outlier_flags.size(); ++i) {
    scores(static_cast<Index>(i)) = outlier_flags[i] ? 1.0 : 0.0;
  }
  return detection_curve(scores, outlier_flags);
}

CurveStats random_curves(const std::vector<bool>& outlier_flags, int trials,
                         std::uint64_t seed) {
  if (trials < 1) throw UsageError("random_curves needs at least one trial");
  const auto size = static_cast<Index>(outlier_flags.size());
  Vector sum = Vector::Zero(size);
  Vector sum_sq = Vector::Zero(size);
  std::vector<Index> order(outlier_flags.size());
  for (int t = 0; t < trials; ++t) {
    std::iota(order.begin(), order.end(), Index{0});
    CounterRng rng(seed, 0xC0FFEE00ULL + static_cast<std::uint64_t>(t));
    rng.shuffle(order);
    const DetectionCurve curve = accumulate(order, outlier_flags);
    for (Index n = 0; n < size; ++n) {
      const double u = static_cast<double>(curve.counts[static_cast<std::size_t>(n)]);
      sum(n) += u;
      sum_sq(n) += u * u;
    }
  }
  CurveStats stats;
  stats.mean = sum / trials;
  stats.stddev = (sum_sq / trials - stats.mean.cwiseProduct(stats.mean))
                     .cwiseMax(0.0)
                     .cwiseSqrt();
  return stats;
}

Matrix mask_top_features(const Eigen::Ref<const Matrix>& inputs,
                         const Eigen::Ref<const Matrix>& importance, Index n,
                         const Eigen::Ref<const Vector>& baseline_values) {
  if (importance.rows() != inputs.rows() || importance.cols() != inputs.cols()) {
    throw DimensionError("importance must match the corpus input shape");
  }
  require_size(baseline_values.size(), inputs.cols(), "baseline values");
  if (n < 0 || n > inputs.cols()) {
    throw UsageError("n = " + std::to_string(n) + " outside [0, " +
                     std::to_string(inputs.cols()) + "]");
  }
  Matrix out = inputs;
  for (Index c = 0; c < inputs.rows(); ++c) {
    const std::vector<Index> order = argsort_desc(importance.row(c).transpose());
    for (Index k = 0; k < n; ++k) {
      const Index i = order[static_cast<std::size_t>(k)];
      out(c, i) = baseline_values(i);
    }
  }
  return out;
}

double corruption_delta(const SplitModel& model, const Corpus& corpus,
                        const Eigen::Ref<const Vector>& h,
                        const Eigen::Ref<const Matrix>& importance, Index n,
                        const Eigen::Ref<const Vector>& baseline_values,
                        const DecompositionConfig& config) {
  const Matrix corrupted_inputs =
      mask_top_features(corpus.inputs, importance, n, baseline_values);
  const double original = fit_decomposition(h, corpus.latents, config).residual;
  const Matrix corrupted_latents = forward_latent_batch(model, corrupted_inputs);
  const double corrupted = fit_decomposition(h, corrupted_latents, config).residual;
  return corrupted - original;
}

}  // namespace simplex

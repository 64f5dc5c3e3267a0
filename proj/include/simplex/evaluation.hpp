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

#ifndef SIMPLEX_EVALUATION_HPP_
#define SIMPLEX_EVALUATION_HPP_

#include <cstdint>
#include <vector>

#include "simplex/decomposition.hpp"
#include "simplex/model.hpp"

namespace simplex {

// 1 - sum ||t - a||^2 / sum ||t - mean(t)||^2 over rows (one pair per row).
double r2_score(const Eigen::Ref<const Matrix>& truths,
                const Eigen::Ref<const Matrix>& approxs);

// counts[n - 1] = number of outliers among the n highest-scored examples.
struct DetectionCurve {
  std::vector<Index> counts;
  Index outliers_total = 0;

  // Nondecreasing, bounded by min(n, outliers_total), ends at outliers_total.
  bool valid() const;
};

DetectionCurve detection_curve(const Eigen::Ref<const Vector>& scores,
                               const std::vector<bool>& outlier_flags);

// Inspects every outlier first.
DetectionCurve ideal_curve(const std::vector<bool>& outlier_flags);

struct CurveStats {
  Vector mean;
  Vector stddev;  // population standard deviation
};

// Mean and spread of `trials` uniformly random inspection orders.
CurveStats random_curves(const std::vector<bool>& outlier_flags, int trials,
                         std::uint64_t seed);

// Copy of `inputs` where, in each row c, the n features with the largest
// importance(c, i) are replaced by baseline_values(i). Ties keep lower i.
Matrix mask_top_features(const Eigen::Ref<const Matrix>& inputs,
                         const Eigen::Ref<const Matrix>& importance, Index n,
                         const Eigen::Ref<const Vector>& baseline_values);

// Residual increase r_{C_cor}(h) - r_C(h) after masking each corpus
// member's n most important features and re-encoding through the model.
double corruption_delta(const SplitModel& model, const Corpus& corpus,
                        const Eigen::Ref<const Vector>& h,
                        const Eigen::Ref<const Matrix>& importance, Index n,
                        const Eigen::Ref<const Vector>& baseline_values,
                        const DecompositionConfig& config = {});

}  // namespace simplex

#endif  // SIMPLEX_EVALUATION_HPP_

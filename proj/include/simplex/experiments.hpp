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

#ifndef SIMPLEX_EXPERIMENTS_HPP_
#define SIMPLEX_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simplex/attribution.hpp"
#include "simplex/decomposition.hpp"
#include "simplex/evaluation.hpp"
#include "simplex/model.hpp"

namespace simplex {

// One method at one K. Latent-space columns are empty for the representer,
// which only approximates outputs.
struct PrecisionRow {
  std::string method;
  Index k = 0;
  std::uint64_t seed = 0;
  std::optional<double> r2_latent;
  double r2_output = 0.0;
  std::optional<double> residual_mean;
};

inline constexpr const char* kPrecisionMethods[] = {"simplex", "knn_uniform",
                                                    "knn_distance", "representer"};

// Approximates every test latent and logit vector from the corpus with
// SimplEx (top-K), both KNN baselines and the representer formula. The
// representer always uses the whole corpus; it needs corpus labels.
std::vector<PrecisionRow> precision_benchmark(const SplitModel& model,
                                              const Corpus& corpus,
                                              const Matrix& test_inputs,
                                              std::span<const Index> ks,
                                              const DecompositionConfig& config,
                                              double lambda, std::uint64_t seed,
                                              int jobs = 1);

struct DetectionResult {
  DetectionCurve simplex;
  DetectionCurve knn_uniform;
  DetectionCurve knn_distance;
  DetectionCurve ideal;
  CurveStats random;
  Vector simplex_residuals;
};

// Ranks test examples by decreasing reconstruction residual.
DetectionResult detection_benchmark(const SplitModel& model, const Corpus& corpus,
                                    const Matrix& test_inputs,
                                    const std::vector<bool>& outlier_flags,
                                    const DecompositionConfig& config, Index knn_k,
                                    int random_trials, std::uint64_t seed,
                                    int jobs = 1);

struct CorruptionRow {
  Index test_index = 0;
  Index n = 0;
  double delta_projection = 0.0;
  double delta_integrated_gradients = 0.0;
};

// Residual increase when each corpus member loses its n most important
// features, ranked by the magnitude of its Jacobian projections and of its
// Integrated Gradients for the test example's predicted class. Masked features take the baseline
// value. Test examples whose latent equals the baseline latent are skipped.
std::vector<CorruptionRow> corruption_benchmark(const SplitModel& model,
                                                const Corpus& corpus,
                                                const Matrix& test_inputs,
                                                const Baseline& baseline,
                                                std::span<const Index> ns,
                                                const DecompositionConfig& config,
                                                int n_bins = kDefaultBins,
                                                int jobs = 1);

}  // namespace simplex

#endif  // SIMPLEX_EXPERIMENTS_HPP_

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

#ifndef SIMPLEX_BASELINES_HPP_
#define SIMPLEX_BASELINES_HPP_

#include <string>

#include "simplex/decomposition.hpp"
#include "simplex/model.hpp"

namespace simplex {

enum class KnnWeighting { kUniform, kDistance };

std::string to_string(KnnWeighting method);

struct BaselineWeights {
  Vector weights;  // simplex vector supported on the K nearest latents
  KnnWeighting method = KnnWeighting::kUniform;
};

// K nearest corpus latents by Euclidean distance; equal distances keep the
// lower index.
std::vector<Index> nearest_neighbors(const Eigen::Ref<const Vector>& h,
                                     const Eigen::Ref<const Matrix>& latents, Index k);

BaselineWeights knn_uniform(const Eigen::Ref<const Vector>& h,
                            const Eigen::Ref<const Matrix>& latents, Index k);

// Weights proportional to 1 / distance; an exact match takes all the weight.
BaselineWeights knn_distance(const Eigen::Ref<const Vector>& h,
                             const Eigen::Ref<const Matrix>& latents, Index k);

// Output approximation from the representer theorem restricted to the
// corpus: (1 / (2 lambda C)) sum_c (z^c - f(x^c)) <g(x^c), g(x)>, with
// f(x^c) the softmax probabilities. Needs corpus labels.
Vector representer_output(const SplitModel& model, const Corpus& corpus,
                          const Eigen::Ref<const Vector>& x, double lambda);

}  // namespace simplex

#endif  // SIMPLEX_BASELINES_HPP_

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

#include "simplex/baselines.hpp"

namespace simplex {

std::string to_string(KnnWeighting method) {
  return method == KnnWeighting::kDistance ? "knn_distance" : "knn_uniform";
}

std::vector<Index> nearest_neighbors(const Eigen::Ref<const Vector>& h,
                                     const Eigen::Ref<const Matrix>& latents,
                                     Index k) {
  const Index corpus_size = latents.rows();
  if (k < 1 || k > corpus_size) {
    throw UsageError("K = " + std::to_string(k) + " outside [1, " +
                     std::to_string(corpus_size) + "]");
  }
  require_size(h.size(), latents.cols(), "test latent");
  Vector distances(corpus_size);
  for (Index c = 0; c < corpus_size; ++c) {
    distances(c) = l2_norm(h - latents.row(c).transpose());
  }
  std::vector<Index> order = argsort_asc(distances);
  order.resize(static_cast<std::size_t>(k));
  return order;
}

BaselineWeights knn_uniform(const Eigen::Ref<const Vector>& h,
                            const Eigen::Ref<const Matrix>& latents, Index k) {
  BaselineWeights out{Vector::Zero(latents.rows()), KnnWeighting::kUniform};
  for (Index c : nearest_neighbors(h, latents, k)) {
    out.weights(c) = 1.0 / static_cast<double>(k);
  }
  return out;
}

BaselineWeights knn_distance(const Eigen::Ref<const Vector>& h,
                             const Eigen::Ref<const Matrix>& latents, Index k) {
  BaselineWeights out{Vector::Zero(latents.rows()), KnnWeighting::kDistance};
  const std::vector<Index> neighbors = nearest_neighbors(h, latents, k);
  double total = 0.0;
  for (Index c : neighbors) {
    const double distance = l2_norm(h - latents.row(c).transpose());
    if (distance == 0.0) {
      out.weights.setZero();
      out.weights(c) = 1.0;
      return out;
    }
    out.weights(c) = 1.0 / distance;
    total += out.weights(c);
  }
  out.weights /= total;
  return out;
}

Vector representer_output(const SplitModel& model, const Corpus& corpus,
                          const Eigen::Ref<const Vector>& x, double lambda) {
  if (!corpus.labels) throw DataError("representer_output needs corpus labels");
  if (!(lambda > 0)) throw UsageError("representer lambda must be > 0");
  const Vector h = forward_latent(model, x);
  const Matrix& labels = *corpus.labels;
  Vector out = Vector::Zero(model.output_dim());
  for (Index c = 0; c < corpus.size(); ++c) {
    const double similarity = inner(corpus.latents.row(c).transpose(), h);
    out += (labels.row(c) - corpus.predictions.row(c)).transpose() * similarity;
  }
  return out / (2.0 * lambda * static_cast<double>(corpus.size()));
}

}  // namespace simplex

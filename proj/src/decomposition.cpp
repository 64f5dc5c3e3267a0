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

#include "simplex/decomposition.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numeric>

#include "simplex/parallel.hpp"

namespace simplex {

Corpus Corpus::build(const SplitModel& model, Matrix inputs,
                     std::optional<Matrix> labels) {
  if (inputs.rows() < 1) throw DataError("corpus must contain at least one example");
  require_size(inputs.cols(), model.input_dim(), "corpus inputs");
  if (!inputs.allFinite()) throw DataError("corpus inputs contain non-finite values");
  if (labels) {
    require_size(labels->rows(), inputs.rows(), "corpus labels");
    require_size(labels->cols(), model.output_dim(), "corpus labels");
  }
  Corpus corpus;
  corpus.latents = forward_latent_batch(model, inputs);
  corpus.predictions = Matrix(inputs.rows(), model.output_dim());
  for (Index c = 0; c < inputs.rows(); ++c) {
    corpus.predictions.row(c) =
        softmax(forward_head(model, corpus.latents.row(c).transpose())).transpose();
  }
  corpus.inputs = std::move(inputs);
  corpus.labels = std::move(labels);
  return corpus;
}

void DecompositionConfig::validate(Index corpus_size) const {
  if (steps < 1) throw UsageError("decomposition steps must be >= 1");
  if (!(learning_rate > 0)) throw UsageError("decomposition learning_rate must be > 0");
  if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1)) {
    throw UsageError("decomposition Adam betas must lie in [0, 1)");
  }
  if (k_active && (*k_active < 1 || *k_active > corpus_size)) {
    throw UsageError("k_active = " + std::to_string(*k_active) +
                     " outside [1, " + std::to_string(corpus_size) + "]");
  }
  if (!(reg_factor_init > 0) || !(reg_factor_final > 0)) {
    throw UsageError("regularisation factors must be > 0");
  }
  if (!(activity_threshold >= 0)) throw UsageError("activity_threshold must be >= 0");
  if (early_stop_window < 1) throw UsageError("early_stop_window must be >= 1");
}

std::vector<Index> Decomposition::active_indices(double threshold) const {
  std::vector<Index> out;
  for (Index c : argsort_desc(weights)) {
    if (weights(c) > threshold) out.push_back(c);
  }
  return out;
}

Vector reconstruct_latent(const Eigen::Ref<const Matrix>& latents,
                          const Eigen::Ref<const Vector>& weights) {
  require_size(weights.size(), latents.rows(), "corpus weights");
  return latents.transpose() * weights;
}

double corpus_residual(const Eigen::Ref<const Vector>& h,
                       const Eigen::Ref<const Matrix>& latents,
                       const Eigen::Ref<const Vector>& weights) {
  require_size(h.size(), latents.cols(), "test latent");
  return l2_norm(h - reconstruct_latent(latents, weights));
}

namespace {

Decomposition finish(const Eigen::Ref<const Vector>& h,
                     const Eigen::Ref<const Matrix>& latents, Vector weights,
                     const DecompositionConfig& config, int steps_run) {
  Decomposition out;
  out.reconstruction = reconstruct_latent(latents, weights);
  out.residual = l2_norm(h - out.reconstruction);
  out.active_count = (weights.array() > config.activity_threshold).count();
  out.weights = std::move(weights);
  out.steps_run = steps_run;
  return out;
}

}  // namespace

Decomposition fit_decomposition(const Eigen::Ref<const Vector>& h,
                                const Eigen::Ref<const Matrix>& latents,
                                const DecompositionConfig& config) {
  const Index corpus_size = latents.rows();
  if (corpus_size < 1) throw DataError("corpus must contain at least one example");
  require_size(h.size(), latents.cols(), "test latent");
  config.validate(corpus_size);
  if (!h.allFinite()) throw DataError("test latent contains non-finite values");

  if (corpus_size == 1) return finish(h, latents, Vector::Ones(1), config, 0);

  const Index penalised = config.k_active ? corpus_size - *config.k_active : 0;
  const double ramp =
      config.steps > 1 ? std::log(config.reg_factor_final / config.reg_factor_init) /
                             static_cast<double>(config.steps - 1)
                       : 0.0;

  Vector pre = Vector::Zero(corpus_size);
  Vector m = Vector::Zero(corpus_size);
  Vector v = Vector::Zero(corpus_size);
  Vector w(corpus_size), grad_w(corpus_size), grad(corpus_size);
  Vector diff(h.size());
  std::vector<Index> order(static_cast<std::size_t>(corpus_size));
  std::vector<double> losses;
  const bool track_losses = config.early_stop && penalised == 0;
  if (track_losses) losses.reserve(static_cast<std::size_t>(config.steps));

  int step = 0;
  for (; step < config.steps; ++step) {
    w = softmax(pre);
    diff = h;
    diff.noalias() -= latents.transpose() * w;
    double loss = diff.squaredNorm();
    grad_w.noalias() = -2.0 * (latents * diff);

    if (penalised > 0) {
      const double reg_factor = config.reg_factor_init * std::exp(ramp * step);
      // The penalised set is the C - K smallest weights; ties keep lower indices.
      std::iota(order.begin(), order.end(), Index{0});
      std::nth_element(order.begin(), order.begin() + (penalised - 1), order.end(),
                       [&](Index a, Index b) { return w(a) < w(b) || (w(a) == w(b) && a < b); });
      for (Index d = 0; d < penalised; ++d) {
        const Index c = order[static_cast<std::size_t>(d)];
        loss += reg_factor * w(c);
        grad_w(c) += reg_factor;
      }
    }
    if (!std::isfinite(loss)) {
      throw NumericalError("decomposition loss became non-finite at step " +
                           std::to_string(step));
    }
    if (track_losses) {
      losses.push_back(loss);
      const auto n = losses.size();
      const auto window = static_cast<std::size_t>(config.early_stop_window);
      if (n > window && losses[n - 1 - window] - loss < config.early_stop_tol) break;
    }

    // Chain rule through the softmax: dL/dpre = w * (g - <w, g>).
    grad = (w.array() * (grad_w.array() - w.dot(grad_w))).matrix();
    const double t = static_cast<double>(step + 1);
    m = config.beta1 * m + (1.0 - config.beta1) * grad;
    v = config.beta2 * v + (1.0 - config.beta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(config.beta1, t);
    const double c2 = 1.0 - std::pow(config.beta2, t);
    pre.array() -= config.learning_rate * (m.array() / c1) /
                   ((v.array() / c2).sqrt() + config.eps);
  }
  if (!pre.allFinite()) {
    throw NumericalError("decomposition pre-weights became non-finite at step " +
                         std::to_string(step));
  }
  return finish(h, latents, softmax(pre), config, step);
}

Decomposition fit_decomposition(const Eigen::Ref<const Vector>& h,
                                const Corpus& corpus,
                                const DecompositionConfig& config) {
  return fit_decomposition(h, corpus.latents, config);
}

std::vector<Decomposition> fit_decompositions(const Matrix& test_latents,
                                              const Matrix& latents,
                                              const DecompositionConfig& config,
                                              int jobs) {
  std::vector<Decomposition> out(static_cast<std::size_t>(test_latents.rows()));
  parallel_for(test_latents.rows(), jobs, [&](Index i) {
    out[static_cast<std::size_t>(i)] =
        fit_decomposition(test_latents.row(i).transpose(), latents, config);
  });
  return out;
}

OutputBound output_error_bound(const SplitModel& model,
                               const Eigen::Ref<const Vector>& h,
                               const Decomposition& decomposition) {
  require_size(h.size(), model.latent_dim(), "test latent");
  require_size(decomposition.reconstruction.size(), model.latent_dim(),
               "reconstruction");
  OutputBound bound;
  // The head bias cancels in l(h_hat) - l(h).
  bound.lhs = l2_norm(model.head_weight * (decomposition.reconstruction - h));
  bound.rhs = operator_norm(model.head_weight) * decomposition.residual;
  return bound;
}

bool affine_independence(const Eigen::Ref<const Matrix>& latents, double tol) {
  const Index corpus_size = latents.rows();
  const Index dim = latents.cols();
  if (corpus_size < 1) return false;
  if (corpus_size > dim + 1) return false;
  Matrix stacked(dim + 1, corpus_size);
  stacked.topRows(dim) = latents.transpose();
  stacked.row(dim).setOnes();
  Eigen::JacobiSVD<Matrix> svd(stacked);
  return svd.singularValues().minCoeff() > tol;
}

}  // namespace simplex

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

#ifndef SIMPLEX_DECOMPOSITION_HPP_
#define SIMPLEX_DECOMPOSITION_HPP_

#include <optional>
#include <vector>

#include "simplex/model.hpp"
#include "simplex/numerics.hpp"

namespace simplex {

// Reference examples with their latents cached from one model. Every
// matrix stores one corpus member per row.
struct Corpus {
  Matrix inputs;                 // C x d_X
  Matrix latents;                // C x d_H
  Matrix predictions;            // C x d_Y, softmax of the logits
  std::optional<Matrix> labels;  // C x d_Y target vectors, if known

  Index size() const { return latents.rows(); }

  // Encodes `inputs` through `model`; latents are never taken from outside.
  static Corpus build(const SplitModel& model, Matrix inputs,
                      std::optional<Matrix> labels = std::nullopt);
};

struct DecompositionConfig {
  int steps = 10000;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // When set, an L1 penalty on the C - K smallest weights leaves at most K
  // weights above activity_threshold.
  std::optional<Index> k_active;
  // Penalty factor ramps geometrically from init to final over the run.
  double reg_factor_init = 0.1;
  double reg_factor_final = 1000.0;
  double activity_threshold = 1e-3;
  // Stop once the loss improved by less than early_stop_tol over the last
  // early_stop_window steps. Ignored while the penalty schedule is active.
  bool early_stop = false;
  double early_stop_tol = 1e-9;
  int early_stop_window = 100;

  void validate(Index corpus_size) const;
};

struct Decomposition {
  Vector weights;         // on the probability simplex
  double residual = 0.0;  // || h - reconstruction ||
  Vector reconstruction;  // sum_c w^c h^c
  Index active_count = 0;
  int steps_run = 0;

  // Indices with weight above `threshold`, by descending weight.
  std::vector<Index> active_indices(double threshold) const;
};

// Softmax-parametrised Adam minimisation of || h - latents^T w ||^2 over the
// simplex, starting from zero pre-weights.
Decomposition fit_decomposition(const Eigen::Ref<const Vector>& h,
                                const Eigen::Ref<const Matrix>& latents,
                                const DecompositionConfig& config = {});

Decomposition fit_decomposition(const Eigen::Ref<const Vector>& h,
                                const Corpus& corpus,
                                const DecompositionConfig& config = {});

// Decomposes every row of `test_latents`; results are independent of `jobs`.
std::vector<Decomposition> fit_decompositions(const Matrix& test_latents,
                                              const Matrix& latents,
                                              const DecompositionConfig& config,
                                              int jobs = 1);

Vector reconstruct_latent(const Eigen::Ref<const Matrix>& latents,
                          const Eigen::Ref<const Vector>& weights);

double corpus_residual(const Eigen::Ref<const Vector>& h,
                       const Eigen::Ref<const Matrix>& latents,
                       const Eigen::Ref<const Vector>& weights);

struct OutputBound {
  double lhs = 0.0;  // || l(h_hat) - l(h) ||
  double rhs = 0.0;  // ||A||_op * residual

  bool holds(double slack = 1e-9) const { return lhs <= rhs + slack; }
};

OutputBound output_error_bound(const SplitModel& model,
                               const Eigen::Ref<const Vector>& h,
                               const Decomposition& decomposition);

// True iff the (d_H + 1) x C matrix of latents stacked over a row of ones
// has smallest singular value above `tol`, i.e. decompositions are unique.
bool affine_independence(const Eigen::Ref<const Matrix>& latents, double tol = 1e-8);

}  // namespace simplex

#endif  // SIMPLEX_DECOMPOSITION_HPP_

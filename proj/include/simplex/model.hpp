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

#ifndef SIMPLEX_MODEL_HPP_
#define SIMPLEX_MODEL_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "simplex/numerics.hpp"

namespace simplex {

enum class Activation { kIdentity, kRelu };

std::string to_string(Activation activation);
Activation activation_from_string(const std::string& name);

struct DenseLayer {
  Matrix weight;  // out x in
  Vector bias;    // out
  Activation activation = Activation::kIdentity;
};

// A black box f = l o g: `layers` compose the latent map g, and the affine
// head l(h) = head_weight * h + head_bias produces the explained output
// (logits for classifiers). The output of the last layer is the latent
// vector; nothing non-linear sits between it and the head.
struct SplitModel {
  std::vector<DenseLayer> layers;
  Matrix head_weight;  // d_Y x d_H
  Vector head_bias;    // d_Y

  Index input_dim() const;
  Index latent_dim() const;
  Index output_dim() const;

  // Throws DimensionError when the layer chain is inconsistent.
  void validate() const;

  friend bool operator==(const SplitModel& a, const SplitModel& b);
};

// Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
// `widths` = {d_X, hidden..., d_H}; every g-layer uses `activation`.
SplitModel initialize_model(std::span<const Index> widths, Index output_dim,
                            Activation activation, std::uint64_t seed);

Vector forward_latent(const SplitModel& model, const Eigen::Ref<const Vector>& x);
Vector forward_head(const SplitModel& model, const Eigen::Ref<const Vector>& h);

struct Prediction {
  Vector logits;
  Vector probs;
};

Prediction predict(const SplitModel& model, const Eigen::Ref<const Vector>& x);

// Row-wise latents / logits for a batch stored one example per row.
Matrix forward_latent_batch(const SplitModel& model, const Matrix& inputs);
Matrix forward_head_batch(const SplitModel& model, const Matrix& latents);

// v^T (dg/dx) evaluated at x, by reverse-mode differentiation of <v, g(x)>.
// The ReLU derivative at 0 is taken as 0.
Vector pullback_gradient(const SplitModel& model,
                         const Eigen::Ref<const Vector>& x,
                         const Eigen::Ref<const Vector>& v);

// Full d_H x d_X Jacobian of g at x, built as the product of the layer
// Jacobians (forward accumulation). Independent of pullback_gradient.
Matrix latent_jacobian(const SplitModel& model, const Eigen::Ref<const Vector>& x);

// Sum of squares of every parameter (all layer and head weights and biases).
double parameter_norm_squared(const SplitModel& model);

// Paired inputs/targets, one example per row.
struct Dataset {
  Matrix inputs;
  Matrix targets;

  Index size() const { return inputs.rows(); }
};

enum class LossKind { kCrossEntropy, kMse };

std::string to_string(LossKind loss);
LossKind loss_from_string(const std::string& name);

struct TrainConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;  // lambda in lambda * ||theta||^2
  int epochs = 10;
  int batch_size = 32;
  LossKind loss = LossKind::kCrossEntropy;
  std::uint64_t seed = 0;
  double dropout = 0.0;  // training only; inference never drops units

  void validate() const;
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;
  // Accuracy for cross-entropy, RMSE for MSE, over the whole dataset.
  double metric = 0.0;
};

// Minibatch Adam on mean-per-example loss + weight_decay * ||theta||^2.
// Deterministic given config.seed: the shuffle of epoch e comes from stream e.
SplitModel train(const SplitModel& model, const Dataset& data,
                 const TrainConfig& config,
                 std::vector<EpochStats>* history = nullptr);

// Accuracy of argmax(logits) against argmax(targets).
double accuracy(const SplitModel& model, const Dataset& data);
double rmse(const SplitModel& model, const Dataset& data);

Matrix one_hot(std::span<const int> labels, Index classes);

// JSON checkpoint. Doubles are written in shortest round-trip form, so
// save/load reproduces every parameter bit for bit.
inline constexpr int kCheckpointFormatVersion = 1;
std::string checkpoint_to_json(const SplitModel& model);
SplitModel checkpoint_from_json(const std::string& text);
void save_checkpoint(const SplitModel& model, const std::string& path);
SplitModel load_checkpoint(const std::string& path);

}  // namespace simplex

#endif  // SIMPLEX_MODEL_HPP_

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

#include "simplex/model.hpp"

#include <cmath>

#include "simplex/rng.hpp"

namespace simplex {

std::string to_string(Activation activation) {
  switch (activation) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
  }
  return "identity";
}

Activation activation_from_string(const std::string& name) {
  if (name == "identity" || name == "linear") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  throw DataError("unknown activation '" + name + "'");
}

Index SplitModel::input_dim() const {
  return layers.empty() ? head_weight.cols() : layers.front().weight.cols();
}

Index SplitModel::latent_dim() const { return head_weight.cols(); }

Index SplitModel::output_dim() const { return head_weight.rows(); }

void SplitModel::validate() const {
  if (head_weight.rows() < 1 || head_weight.cols() < 1) {
    throw DimensionError("model head must be at least 1x1");
  }
  require_size(head_bias.size(), head_weight.rows(), "head bias");
  Index width = input_dim();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.weight.cols() != width) {
      throw DimensionError("layer " + std::to_string(l) + " expects input " +
                           std::to_string(layer.weight.cols()) +
                           " but receives " + std::to_string(width));
    }
    require_size(layer.bias.size(), layer.weight.rows(), "layer bias");
    width = layer.weight.rows();
  }
  if (width != head_weight.cols()) {
    throw DimensionError("latent width " + std::to_string(width) +
                         " does not match head input " +
                         std::to_string(head_weight.cols()));
  }
}

bool operator==(const SplitModel& a, const SplitModel& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    const auto& la = a.layers[l];
    const auto& lb = b.layers[l];
    if (la.activation != lb.activation) return false;
    if (la.weight.rows() != lb.weight.rows() ||
        la.weight.cols() != lb.weight.cols() || la.weight != lb.weight ||
        la.bias != lb.bias) {
      return false;
    }
  }
  return a.head_weight.rows() == b.head_weight.rows() &&
         a.head_weight.cols() == b.head_weight.cols() &&
         a.head_weight == b.head_weight && a.head_bias == b.head_bias;
}

SplitModel initialize_model(std::span<const Index> widths, Index output_dim,
                            Activation activation, std::uint64_t seed) {
  if (widths.size() < 1 || output_dim < 1) {
    throw UsageError("initialize_model: need at least an input width and one output");
  }
  for (Index w : widths) {
    if (w < 1) throw UsageError("initialize_model: widths must be >= 1");
  }
  CounterRng rng(seed, 0x1417);
  auto fill = [&](Matrix& weight, Vector& bias, Index fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Index r = 0; r < weight.rows(); ++r) {
      for (Index c = 0; c < weight.cols(); ++c) {
        weight(r, c) = rng.uniform(-bound, bound);
      }
    }
    for (Index r = 0; r < bias.size(); ++r) bias(r) = rng.uniform(-bound, bound);
  };

  SplitModel model;
  for (std::size_t l = 1; l < widths.size(); ++l) {
    DenseLayer layer{Matrix(widths[l], widths[l - 1]), Vector(widths[l]),
                     activation};
    fill(layer.weight, layer.bias, widths[l - 1]);
    model.layers.push_back(std::move(layer));
  }
  model.head_weight = Matrix(output_dim, widths.back());
  model.head_bias = Vector(output_dim);
  fill(model.head_weight, model.head_bias, widths.back());
  return model;
}

namespace {

void apply_activation(Activation activation, Vector& z) {
  if (activation == Activation::kRelu) z = z.cwiseMax(0.0);
}

// Derivative mask of the activation at pre-activation z.
Vector activation_slope(Activation activation, const Vector& z) {
  if (activation == Activation::kIdentity) return Vector::Ones(z.size());
  return (z.array() > 0.0).cast<double>().matrix();
}

}  // namespace

Vector forward_latent(const SplitModel& model, const Eigen::Ref<const Vector>& x) {
  require_size(x.size(), model.input_dim(), "forward_latent input");
  Vector a = x;
  for (const DenseLayer& layer : model.layers) {
    Vector z = layer.weight * a + layer.bias;
    apply_activation(layer.activation, z);
    a = std::move(z);
  }
  return a;
}

Vector forward_head(const SplitModel& model, const Eigen::Ref<const Vector>& h) {
  require_size(h.size(), model.latent_dim(), "forward_head latent");
  return model.head_weight * h + model.head_bias;
}

Prediction predict(const SplitModel& model, const Eigen::Ref<const Vector>& x) {
  Prediction out;
  out.logits = forward_head(model, forward_latent(model, x));
  out.probs = softmax(out.logits);
  return out;
}

Matrix forward_latent_batch(const SplitModel& model, const Matrix& inputs) {
  require_size(inputs.cols(), model.input_dim(), "forward_latent_batch input");
  Matrix out(inputs.rows(), model.latent_dim());
  for (Index r = 0; r < inputs.rows(); ++r) {
    out.row(r) = forward_latent(model, inputs.row(r).transpose()).transpose();
  }
  return out;
}

Matrix forward_head_batch(const SplitModel& model, const Matrix& latents) {
  require_size(latents.cols(), model.latent_dim(), "forward_head_batch latent");
  Matrix out(latents.rows(), model.output_dim());
  for (Index r = 0; r < latents.rows(); ++r) {
    out.row(r) = forward_head(model, latents.row(r).transpose()).transpose();
  }
  return out;
}

Vector pullback_gradient(const SplitModel& model,
                         const Eigen::Ref<const Vector>& x,
                         const Eigen::Ref<const Vector>& v) {
  require_size(x.size(), model.input_dim(), "pullback_gradient input");
  require_size(v.size(), model.latent_dim(), "pullback_gradient covector");
  std::vector<Vector> slopes;
  slopes.reserve(model.layers.size());
  Vector a = x;
  for (const DenseLayer& layer : model.layers) {
    Vector z = layer.weight * a + layer.bias;
    slopes.push_back(activation_slope(layer.activation, z));
    apply_activation(layer.activation, z);
    a = std::move(z);
  }
  Vector grad = v;
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    grad = model.layers[l].weight.transpose() *
           grad.cwiseProduct(slopes[l]);
  }
  return grad;
}

Matrix latent_jacobian(const SplitModel& model, const Eigen::Ref<const Vector>& x) {
  require_size(x.size(), model.input_dim(), "latent_jacobian input");
  Matrix jac = Matrix::Identity(x.size(), x.size());
  Vector a = x;
  for (const DenseLayer& layer : model.layers) {
    Vector z = layer.weight * a + layer.bias;
    const Vector slope = activation_slope(layer.activation, z);
    jac = slope.asDiagonal() * (layer.weight * jac);
    apply_activation(layer.activation, z);
    a = std::move(z);
  }
  return jac;
}

double parameter_norm_squared(const SplitModel& model) {
  double total = 0.0;
  for (const DenseLayer& layer : model.layers) {
    total += layer.weight.squaredNorm() + layer.bias.squaredNorm();
  }
  return total + model.head_weight.squaredNorm() + model.head_bias.squaredNorm();
}

Matrix one_hot(std::span<const int> labels, Index classes) {
  Matrix out = Matrix::Zero(static_cast<Index>(labels.size()), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= classes) {
      throw DataError("label " + std::to_string(labels[i]) +
                      " outside [0, " + std::to_string(classes) + ")");
    }
    out(static_cast<Index>(i), labels[i]) = 1.0;
  }
  return out;
}

}  // namespace simplex

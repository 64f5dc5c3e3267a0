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

#include <cmath>
#include <numeric>

#include "simplex/model.hpp"
#include "simplex/rng.hpp"

namespace simplex {

std::string to_string(LossKind loss) {
  return loss == LossKind::kMse ? "mse" : "cross_entropy";
}

LossKind loss_from_string(const std::string& name) {
  if (name == "cross_entropy") return LossKind::kCrossEntropy;
  if (name == "mse") return LossKind::kMse;
  throw UsageError("unknown loss '" + name + "'");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0)) throw UsageError("learning_rate must be > 0");
  if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1)) {
    throw UsageError("Adam betas must lie in [0, 1)");
  }
  if (!(eps > 0)) throw UsageError("eps must be > 0");
  if (!(weight_decay >= 0)) throw UsageError("weight_decay must be >= 0");
  if (epochs < 0) throw UsageError("epochs must be >= 0");
  if (batch_size < 1) throw UsageError("batch_size must be >= 1");
  if (!(dropout >= 0 && dropout < 1)) throw UsageError("dropout must lie in [0, 1)");
}

namespace {

// Adam moments for one parameter block, PyTorch update rule.
struct AdamSlot {
  Matrix m;
  Matrix v;

  explicit AdamSlot(const Matrix& like)
      : m(Matrix::Zero(like.rows(), like.cols())),
        v(Matrix::Zero(like.rows(), like.cols())) {}

  template <typename Param>
  void step(Param& param, const Matrix& grad, const TrainConfig& cfg, long t) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
    param -= (cfg.learning_rate *
              ((m / c1).array() / ((v / c2).array().sqrt() + cfg.eps)))
                 .matrix();
  }
};

struct LayerGrad {
  Matrix weight;
  Vector bias;
};

}  // namespace

double accuracy(const SplitModel& model, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  Index correct = 0;
  for (Index r = 0; r < data.size(); ++r) {
    const Vector logits =
        forward_head(model, forward_latent(model, data.inputs.row(r).transpose()));
    Index predicted = 0;
    Index truth = 0;
    logits.maxCoeff(&predicted);
    data.targets.row(r).maxCoeff(&truth);
    if (predicted == truth) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double rmse(const SplitModel& model, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  double sq = 0.0;
  for (Index r = 0; r < data.size(); ++r) {
    const Vector y =
        forward_head(model, forward_latent(model, data.inputs.row(r).transpose()));
    sq += (y - data.targets.row(r).transpose()).squaredNorm();
  }
  return std::sqrt(sq / static_cast<double>(data.size() * data.targets.cols()));
}

SplitModel train(const SplitModel& initial, const Dataset& data,
                 const TrainConfig& config, std::vector<EpochStats>* history) {
  config.validate();
  initial.validate();
  if (data.size() == 0) throw DataError("train: empty dataset");
  require_size(data.inputs.cols(), initial.input_dim(), "train inputs");
  require_size(data.targets.rows(), data.inputs.rows(), "train targets");
  require_size(data.targets.cols(), initial.output_dim(), "train targets");

  SplitModel model = initial;
  if (config.epochs == 0) return model;

  const std::size_t depth = model.layers.size();
  std::vector<AdamSlot> w_slots, b_slots;
  for (const DenseLayer& layer : model.layers) {
    w_slots.emplace_back(layer.weight);
    b_slots.emplace_back(layer.bias);
  }
  AdamSlot head_w_slot(model.head_weight);
  AdamSlot head_b_slot(model.head_bias);

  std::vector<Index> order(static_cast<std::size_t>(data.size()));
  const double keep = 1.0 - config.dropout;
  long step = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), Index{0});
    CounterRng shuffle_rng(config.seed, 0x5EED0000ULL + static_cast<std::uint64_t>(epoch));
    shuffle_rng.shuffle(order);
    CounterRng dropout_rng(config.seed, 0xD0D0000000ULL + static_cast<std::uint64_t>(epoch));

    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      const Index batch = static_cast<Index>(stop - start);

      // Columns are examples.
      Matrix input(model.input_dim(), batch);
      Matrix target(model.output_dim(), batch);
      for (Index b = 0; b < batch; ++b) {
        const Index row = order[start + static_cast<std::size_t>(b)];
        input.col(b) = data.inputs.row(row).transpose();
        target.col(b) = data.targets.row(row).transpose();
      }

      std::vector<Matrix> acts{input};
      std::vector<Matrix> slopes;
      for (const DenseLayer& layer : model.layers) {
        Matrix z = (layer.weight * acts.back()).colwise() + layer.bias;
        Matrix slope = Matrix::Ones(z.rows(), z.cols());
        if (layer.activation == Activation::kRelu) slope = (z.array() > 0.0).cast<double>().matrix();
        if (layer.activation == Activation::kRelu) z = z.cwiseMax(0.0);
        if (config.dropout > 0.0) {
          for (Index i = 0; i < z.size(); ++i) {
            const double mask = dropout_rng.uniform() < keep ? 1.0 / keep : 0.0;
            z.data()[i] *= mask;
            slope.data()[i] *= mask;
          }
        }
        slopes.push_back(std::move(slope));
        acts.push_back(std::move(z));
      }
      const Matrix logits =
          (model.head_weight * acts.back()).colwise() + model.head_bias;

      double loss = 0.0;
      Matrix d_logits(logits.rows(), logits.cols());
      for (Index b = 0; b < batch; ++b) {
        if (config.loss == LossKind::kCrossEntropy) {
          const Vector p = softmax(logits.col(b));
          const double shift = logits.col(b).maxCoeff();
          const double log_z =
              shift + std::log((logits.col(b).array() - shift).exp().sum());
          loss -= target.col(b).dot(logits.col(b) - Vector::Constant(p.size(), log_z));
          d_logits.col(b) = p * target.col(b).sum() - target.col(b);
        } else {
          const Vector diff = logits.col(b) - target.col(b);
          loss += diff.squaredNorm();
          d_logits.col(b) = 2.0 * diff;
        }
      }
      loss /= static_cast<double>(batch);
      d_logits /= static_cast<double>(batch);
      if (!std::isfinite(loss)) {
        throw NumericalError("non-finite training loss at epoch " +
                             std::to_string(epoch) + ", batch " +
                             std::to_string(batches));
      }
      epoch_loss += loss;
      ++batches;

      const double decay = 2.0 * config.weight_decay;
      Matrix head_w_grad = d_logits * acts.back().transpose() + decay * model.head_weight;
      Vector head_b_grad = d_logits.rowwise().sum() + decay * model.head_bias;
      Matrix upstream = model.head_weight.transpose() * d_logits;

      std::vector<LayerGrad> grads(depth);
      for (std::size_t l = depth; l-- > 0;) {
        const Matrix dz = upstream.cwiseProduct(slopes[l]);
        grads[l].weight = dz * acts[l].transpose() + decay * model.layers[l].weight;
        grads[l].bias = dz.rowwise().sum() + decay * model.layers[l].bias;
        if (l > 0) upstream = model.layers[l].weight.transpose() * dz;
      }

      ++step;
      head_w_slot.step(model.head_weight, head_w_grad, config, step);
      head_b_slot.step(model.head_bias, head_b_grad, config, step);
      for (std::size_t l = 0; l < depth; ++l) {
        w_slots[l].step(model.layers[l].weight, grads[l].weight, config, step);
        b_slots[l].step(model.layers[l].bias, grads[l].bias, config, step);
      }
    }

    if (history != nullptr) {
      EpochStats stats;
      stats.epoch = epoch + 1;
      stats.loss = epoch_loss / std::max(batches, 1);
      stats.metric = config.loss == LossKind::kCrossEntropy ? accuracy(model, data)
                                                            : rmse(model, data);
      history->push_back(stats);
    }
  }
  return model;
}

}  // namespace simplex

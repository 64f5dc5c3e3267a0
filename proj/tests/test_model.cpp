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

#include <gtest/gtest.h>

#include <cmath>

#include "simplex/model.hpp"
#include "simplex/rng.hpp"
#include "test_support.hpp"

namespace simplex {
namespace {

using testing::random_mlp;
using testing::random_vector;

SplitModel identity_model(Index d) {
  return testing::linear_model(Matrix::Identity(d, d), Matrix::Identity(d, d),
                               Vector::Zero(d));
}

TEST(ForwardLatent, Examples) {
  Vector x(2);
  x << 1, 2;
  EXPECT_EQ(forward_latent(identity_model(2), x), x);

  SplitModel relu;
  Matrix w(1, 2);
  w << 1, -1;
  relu.layers.push_back({w, Vector::Zero(1), Activation::kRelu});
  relu.head_weight = Matrix::Identity(1, 1);
  relu.head_bias = Vector::Zero(1);
  EXPECT_EQ(forward_latent(relu, x)(0), 0.0);
}

TEST(ForwardLatent, DimensionMismatchThrows) {
  EXPECT_THROW(forward_latent(identity_model(2), Vector::Zero(3)), DimensionError);
  EXPECT_THROW(forward_head(identity_model(2), Vector::Zero(3)), DimensionError);
}

TEST(ForwardHead, Examples) {
  Vector h(2);
  h << 1, 2;
  EXPECT_EQ(forward_head(identity_model(2), h), h);
  Matrix a(1, 2);
  a << 1, 1;
  const SplitModel m = testing::linear_model(Matrix::Identity(2, 2), a, Vector::Ones(1));
  h << 2, 3;
  EXPECT_EQ(forward_head(m, h)(0), 6.0);
}

TEST(ForwardHead, Affine) {
  CounterRng rng(1);
  const SplitModel m = random_mlp(1, {3, 5, 4}, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector h1 = random_vector(rng, 4);
    const Vector h2 = random_vector(rng, 4);
    const double alpha = rng.uniform();
    const Vector lhs = forward_head(m, alpha * h1 + (1 - alpha) * h2);
    const Vector rhs = alpha * forward_head(m, h1) + (1 - alpha) * forward_head(m, h2);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Predict, LogitsAndProbabilities) {
  const SplitModel zero = testing::linear_model(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                                                Vector::Zero(2));
  const Prediction p = predict(zero, Vector::Ones(2));
  EXPECT_NEAR(p.probs(0), 0.5, 1e-15);
  EXPECT_NEAR(p.probs(1), 0.5, 1e-15);

  Vector x(2);
  x << 1, 0;
  EXPECT_EQ(predict(identity_model(2), x).logits, x);

  const SplitModel m = random_mlp(2, {3, 6, 4}, 3);
  CounterRng rng(2);
  const Vector y = random_vector(rng, 3);
  const Prediction q = predict(m, y);
  EXPECT_EQ(q.logits, forward_head(m, forward_latent(m, y)));
  EXPECT_NEAR(q.probs.sum(), 1.0, 1e-12);
}

TEST(ForwardBatch, MatchesRowByRow) {
  const SplitModel m = random_mlp(3, {4, 7, 5}, 2);
  CounterRng rng(3);
  const Matrix inputs = testing::random_matrix(rng, 6, 4);
  const Matrix latents = forward_latent_batch(m, inputs);
  const Matrix logits = forward_head_batch(m, latents);
  for (Index r = 0; r < inputs.rows(); ++r) {
    EXPECT_LT((latents.row(r).transpose() - forward_latent(m, inputs.row(r).transpose()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    EXPECT_LT((logits.row(r).transpose() - forward_head(m, latents.row(r).transpose()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

TEST(Pullback, LinearIsTransposeProduct) {
  CounterRng rng(4);
  const Matrix mm = testing::random_matrix(rng, 3, 5);
  const SplitModel m = testing::linear_model(mm, Matrix::Identity(3, 3), Vector::Zero(3));
  const Vector v = random_vector(rng, 3);
  EXPECT_LT((pullback_gradient(m, random_vector(rng, 5), v) - mm.transpose() * v)
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
  EXPECT_EQ(pullback_gradient(m, random_vector(rng, 5), Vector::Zero(3)), Vector::Zero(5));
}

// Distance from x to the nearest ReLU kink, in pre-activation units.
double kink_margin(const SplitModel& model, Vector x) {
  double margin = INFINITY;
  for (const DenseLayer& layer : model.layers) {
    const Vector z = layer.weight * x + layer.bias;
    if (layer.activation == Activation::kRelu) margin = std::min(margin, z.cwiseAbs().minCoeff());
    x = layer.activation == Activation::kRelu ? Vector(z.cwiseMax(0.0)) : z;
  }
  return margin;
}

TEST(Pullback, MatchesCentralFiniteDifferences) {
  const SplitModel m = random_mlp(5, {4, 9, 6}, 2);
  CounterRng rng(5);
  int checked = 0;
  while (checked < 100) {
    const Vector x = random_vector(rng, 4);
    const Vector v = random_vector(rng, 6);
    if (kink_margin(m, x) < 1e-3) continue;
    const Vector grad = pullback_gradient(m, x, v);
    const double step = 1e-5;
    for (Index i = 0; i < 4; ++i) {
      Vector xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      const double fd = (v.dot(forward_latent(m, xp)) - v.dot(forward_latent(m, xm))) / (2 * step);
      EXPECT_NEAR(grad(i), fd, 1e-4 * std::max(1.0, std::abs(fd)));
    }
    ++checked;
  }
}

TEST(LatentJacobian, AgreesWithPullbackRows) {
  const SplitModel m = random_mlp(6, {3, 8, 8, 5}, 2);
  CounterRng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Vector x = random_vector(rng, 3);
    const Matrix jac = latent_jacobian(m, x);
    ASSERT_EQ(jac.rows(), 5);
    ASSERT_EQ(jac.cols(), 3);
    for (Index k = 0; k < 5; ++k) {
      const Vector e = Vector::Unit(5, k);
      EXPECT_LT((jac.row(k).transpose() - pullback_gradient(m, x, e)).cwiseAbs().maxCoeff(),
                1e-12);
    }
  }
}

TEST(Initialize, ShapesAndRange) {
  const std::vector<Index> widths{5, 7, 3};
  const SplitModel m = initialize_model(widths, 2, Activation::kRelu, 11);
  EXPECT_EQ(m.input_dim(), 5);
  EXPECT_EQ(m.latent_dim(), 3);
  EXPECT_EQ(m.output_dim(), 2);
  EXPECT_LE(m.layers[0].weight.cwiseAbs().maxCoeff(), 1 / std::sqrt(5.0));
  EXPECT_LE(m.layers[1].weight.cwiseAbs().maxCoeff(), 1 / std::sqrt(7.0));
  EXPECT_LE(m.head_weight.cwiseAbs().maxCoeff(), 1 / std::sqrt(3.0));
  EXPECT_TRUE(m == initialize_model(widths, 2, Activation::kRelu, 11));
  EXPECT_FALSE(m == initialize_model(widths, 2, Activation::kRelu, 12));
}

TEST(Train, XorReachesFullAccuracy) {
  const SplitModel m = testing::xor_model();
  EXPECT_EQ(accuracy(m, testing::xor_dataset()), 1.0);
}

TEST(Train, WeightDecayShrinksParameters) {
  const std::vector<Index> widths{2, 8, 8};
  const SplitModel init = initialize_model(widths, 2, Activation::kRelu, 3);
  TrainConfig cfg;
  cfg.epochs = 500;
  cfg.batch_size = 4;
  const SplitModel plain = train(init, testing::xor_dataset(), cfg);
  cfg.weight_decay = 1e-5;
  const SplitModel decayed = train(init, testing::xor_dataset(), cfg);
  EXPECT_LT(parameter_norm_squared(decayed), parameter_norm_squared(plain));
}

TEST(Train, ZeroEpochsLeavesModelUnchanged) {
  const std::vector<Index> widths{2, 4};
  const SplitModel init = initialize_model(widths, 2, Activation::kRelu, 4);
  TrainConfig cfg;
  cfg.epochs = 0;
  EXPECT_TRUE(train(init, testing::xor_dataset(), cfg) == init);
}

TEST(Train, DeterministicReplay) {
  const std::vector<Index> widths{2, 6, 4};
  const SplitModel init = initialize_model(widths, 2, Activation::kRelu, 5);
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.batch_size = 3;
  cfg.dropout = 0.2;
  cfg.seed = 17;
  EXPECT_EQ(checkpoint_to_json(train(init, testing::xor_dataset(), cfg)),
            checkpoint_to_json(train(init, testing::xor_dataset(), cfg)));
}

TEST(Train, LossDecreasesOnRegression) {
  CounterRng rng(8);
  Dataset d;
  d.inputs = testing::random_matrix(rng, 64, 3);
  d.targets = (d.inputs * Vector::Ones(3)).eval();
  const std::vector<Index> widths{3, 16, 8};
  TrainConfig cfg;
  cfg.loss = LossKind::kMse;
  cfg.epochs = 200;
  cfg.learning_rate = 1e-2;
  std::vector<EpochStats> history;
  const SplitModel m =
      train(initialize_model(widths, 1, Activation::kRelu, 6), d, cfg, &history);
  ASSERT_EQ(history.size(), 200u);
  EXPECT_LT(history.back().loss, 0.1 * history.front().loss);
  EXPECT_NEAR(history.back().metric, rmse(m, d), 1e-12);
}

TEST(Train, Errors) {
  const std::vector<Index> widths{2, 4};
  const SplitModel init = initialize_model(widths, 2, Activation::kRelu, 4);
  EXPECT_THROW(train(init, Dataset{Matrix(0, 2), Matrix(0, 2)}, TrainConfig{}), DataError);
  Dataset wrong = testing::xor_dataset();
  wrong.inputs = Matrix::Zero(4, 3);
  EXPECT_THROW(train(init, wrong, TrainConfig{}), DimensionError);
  TrainConfig huge;
  huge.learning_rate = 1e300;
  huge.loss = LossKind::kMse;
  Dataset big = testing::xor_dataset();
  big.inputs *= 1e200;
  EXPECT_THROW(train(init, big, huge), NumericalError);
}

TEST(Checkpoint, RoundTripIsBitExact) {
  const SplitModel m = random_mlp(9, {3, 5, 4}, 2);
  const std::string text = checkpoint_to_json(m);
  const SplitModel back = checkpoint_from_json(text);
  EXPECT_TRUE(back == m);
  EXPECT_EQ(checkpoint_to_json(back), text);
}

TEST(Checkpoint, RejectsMalformedInput) {
  EXPECT_THROW(checkpoint_from_json("not json"), DataError);
  EXPECT_THROW(checkpoint_from_json("{\"format_version\": 99}"), DataError);
  const SplitModel m = random_mlp(9, {3, 5, 4}, 2);
  std::string text = checkpoint_to_json(m);
  text.replace(text.find("\"latent_dim\": 4"), 15, "\"latent_dim\": 5");
  EXPECT_THROW(checkpoint_from_json(text), DataError);
}

TEST(Checkpoint, FileRoundTrip) {
  testing::TempDir dir("ckpt");
  const SplitModel m = testing::xor_model();
  const auto path = (dir.path() / "m.json").string();
  save_checkpoint(m, path);
  const SplitModel back = load_checkpoint(path);
  for (Index r = 0; r < 4; ++r) {
    const Vector x = testing::xor_dataset().inputs.row(r).transpose();
    EXPECT_EQ(predict(back, x).logits, predict(m, x).logits);
  }
  EXPECT_THROW(load_checkpoint((dir.path() / "missing.json").string()), DataError);
}

}  // namespace
}  // namespace simplex

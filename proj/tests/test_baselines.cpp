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

#include "simplex/baselines.hpp"
#include "simplex/rng.hpp"
#include "test_support.hpp"

namespace simplex {
namespace {

using testing::random_matrix;
using testing::random_vector;

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

Matrix three_points() {
  Matrix m(3, 2);
  m << 0, 0, 1, 0, 5, 5;
  return m;
}

TEST(KnnUniform, Examples) {
  const Matrix latents = three_points();
  EXPECT_EQ(knn_uniform(vec({0.4, 0}), latents, 2).weights, vec({0.5, 0.5, 0}));
  EXPECT_EQ(knn_uniform(vec({5, 5}), latents, 1).weights, vec({0, 0, 1}));
  const Vector all = knn_uniform(vec({9, 9}), latents, 3).weights;
  EXPECT_TRUE(all.isApprox(Vector::Constant(3, 1.0 / 3.0), 1e-15));
  EXPECT_THROW(knn_uniform(vec({0, 0}), latents, 0), UsageError);
  EXPECT_THROW(knn_uniform(vec({0, 0}), latents, 4), UsageError);
}

TEST(KnnUniform, TiesKeepLowerIndex) {
  Matrix latents(3, 1);
  latents << 1, -1, 1;
  EXPECT_EQ(knn_uniform(vec({0}), latents, 1).weights, vec({1, 0, 0}));
  EXPECT_EQ(knn_uniform(vec({0}), latents, 2).weights, vec({0.5, 0.5, 0}));
}

TEST(KnnDistance, Examples) {
  Matrix latents(2, 1);
  latents << 1, 3;
  const Vector w = knn_distance(vec({0}), latents, 2).weights;
  EXPECT_NEAR(w(0), 0.75, 1e-15);
  EXPECT_NEAR(w(1), 0.25, 1e-15);
  Matrix square(4, 2);
  square << 1, 0, 0, 1, -1, 0, 0, -1;
  EXPECT_TRUE(knn_distance(vec({0, 0}), square, 4).weights.isApprox(Vector::Constant(4, 0.25)));
  EXPECT_EQ(knn_distance(vec({1, 0}), three_points(), 3).weights, vec({0, 1, 0}));
}

TEST(Knn, ValidSimplexWithBoundedSupport) {
  CounterRng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Index c = 1 + static_cast<Index>(rng.below(12));
    const Index k = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(c)));
    const Matrix latents = random_matrix(rng, c, 3);
    const Vector h = random_vector(rng, 3);
    const auto nearest = nearest_neighbors(h, latents, k);
    for (const Vector& w : {knn_uniform(h, latents, k).weights, knn_distance(h, latents, k).weights}) {
      EXPECT_NEAR(w.sum(), 1.0, 1e-12);
      EXPECT_GE(w.minCoeff(), 0.0);
      EXPECT_LE((w.array() > 0).count(), k);
      for (Index j = 0; j < c; ++j) {
        if (w(j) > 0) EXPECT_NE(std::find(nearest.begin(), nearest.end(), j), nearest.end());
      }
    }
    // Every selected neighbour is at least as close as every excluded one.
    double farthest_in = 0, nearest_out = INFINITY;
    for (Index j = 0; j < c; ++j) {
      const double d = (h - latents.row(j).transpose()).norm();
      if (std::find(nearest.begin(), nearest.end(), j) != nearest.end()) {
        farthest_in = std::max(farthest_in, d);
      } else {
        nearest_out = std::min(nearest_out, d);
      }
    }
    EXPECT_LE(farthest_in, nearest_out);
  }
}

TEST(KnnDistance, ContinuousAtEquidistance) {
  Matrix square(4, 2);
  square << 1, 0, 0, 1, -1, 0, 0, -1;
  const Vector h = vec({1e-8, -2e-8});
  const Vector uniform = knn_uniform(h, square, 4).weights;
  const Vector distance = knn_distance(h, square, 4).weights;
  EXPECT_LT((uniform - distance).cwiseAbs().maxCoeff(), 1e-6);
}

// When h lies inside the hull of its K nearest latents, SimplEx restricted to
// K members fits at least as well as their plain average.
TEST(Knn, SimplexNoWorseThanUniformAverage) {
  CounterRng rng(2);
  for (int trial = 0; trial < 15; ++trial) {
    const Matrix latents = random_matrix(rng, 12, 3);
    const Index k = 4;
    const Vector h = latents.transpose() * testing::random_simplex(rng, 12);
    const auto nearest = nearest_neighbors(h, latents, k);
    Matrix sub(k, 3);
    for (Index j = 0; j < k; ++j) sub.row(j) = latents.row(nearest[static_cast<std::size_t>(j)]);
    const double knn = corpus_residual(h, latents, knn_uniform(h, latents, k).weights);
    const double simplex = fit_decomposition(h, sub).residual;
    EXPECT_LE(simplex, knn + 1e-6);
  }
}

Corpus labelled_corpus(const SplitModel& m, const Matrix& inputs, const Matrix& labels) {
  return Corpus::build(m, inputs, labels);
}

TEST(Representer, CalibratedCorpusGivesZero) {
  const SplitModel m = testing::random_mlp(3, {2, 4, 3}, 2);
  CounterRng rng(3);
  const Matrix inputs = random_matrix(rng, 5, 2);
  Corpus corpus = Corpus::build(m, inputs);
  corpus.labels = corpus.predictions;
  EXPECT_LT(representer_output(m, corpus, random_vector(rng, 2), 1e-3).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Representer, OrthogonalLatentGivesZero) {
  const SplitModel m = testing::linear_model(Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                                             Vector::Zero(2));
  Matrix inputs(2, 2);
  inputs << 1, 0, 3, 0;
  Matrix labels(2, 2);
  labels << 1, 0, 0, 1;
  const Corpus corpus = labelled_corpus(m, inputs, labels);
  EXPECT_EQ(representer_output(m, corpus, vec({0, 2}), 0.5), Vector::Zero(2));
}

TEST(Representer, HandComputedTwoExampleCorpus) {
  const SplitModel m = testing::linear_model(Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                                             Vector::Zero(2));
  Matrix inputs(2, 2);
  inputs << 1, 0, 0, 2;
  Matrix labels(2, 2);
  labels << 1, 0, 0, 1;
  const Corpus corpus = labelled_corpus(m, inputs, labels);
  const Vector x = vec({1, 1});
  // probs of logits [1,0] and [0,2]
  const double e1 = std::exp(1.0), e2 = std::exp(2.0);
  const Vector p1 = vec({e1 / (e1 + 1), 1 / (e1 + 1)});
  const Vector p2 = vec({1 / (1 + e2), e2 / (1 + e2)});
  const Vector expected =
      ((vec({1, 0}) - p1) * 1.0 + (vec({0, 1}) - p2) * 2.0) / (2 * 0.5 * 2);
  EXPECT_LT((representer_output(m, corpus, x, 0.5) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Representer, Errors) {
  const SplitModel m = testing::random_mlp(4, {2, 3}, 2);
  const Corpus unlabelled = Corpus::build(m, Matrix::Ones(2, 2));
  EXPECT_THROW(representer_output(m, unlabelled, Vector::Ones(2), 1.0), DataError);
  Corpus labelled = unlabelled;
  labelled.labels = Matrix::Zero(2, 2);
  EXPECT_THROW(representer_output(m, labelled, Vector::Ones(2), 0.0), UsageError);
}

}  // namespace
}  // namespace simplex

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

#include "simplex/datasets.hpp"
#include "test_support.hpp"

namespace simplex {
namespace {

std::string idx_header(unsigned char rank, std::vector<std::uint32_t> dims) {
  std::string out{'\0', '\0', '\x08', static_cast<char>(rank)};
  for (std::uint32_t d : dims) {
    out += static_cast<char>((d >> 24) & 0xFF);
    out += static_cast<char>((d >> 16) & 0xFF);
    out += static_cast<char>((d >> 8) & 0xFF);
    out += static_cast<char>(d & 0xFF);
  }
  return out;
}

TEST(Ar2, DeterministicRecurrence) {
  Ar2Config cfg;
  cfg.noise_sigma = 0.0;
  cfg.initial = std::make_pair(1.0, 1.0);
  cfg.length = 12;
  const Vector x = ar2_series(cfg, 0);
  ASSERT_EQ(x.size(), 13);
  EXPECT_NEAR(x(2), 0.95, 1e-15);
  EXPECT_NEAR(x(3), 0.915, 1e-15);
  for (Index t = 2; t < x.size(); ++t) {
    EXPECT_NEAR(x(t), 0.7 * x(t - 1) + 0.25 * x(t - 2), 1e-15);
  }
  cfg.sign_flip = true;
  EXPECT_NEAR(ar2_series(cfg, 0)(2), -0.45, 1e-15);
}

TEST(Ar2, WindowsAndReproducibility) {
  Ar2Config cfg;
  cfg.count = 3;
  cfg.length = 20;
  cfg.window = 5;
  cfg.seed = 8;
  const Dataset d = gen_ar2(cfg);
  ASSERT_EQ(d.size(), 3 * (21 - 5));
  ASSERT_EQ(d.inputs.cols(), 5);
  const Vector s1 = ar2_series(cfg, 1);
  const Index row = 16 + 4;  // second series, fifth window
  EXPECT_EQ(d.inputs.row(row).transpose(), s1.segment(4, 5));
  EXPECT_EQ(d.targets(row, 0), s1(9));
  EXPECT_EQ(gen_ar2(cfg).inputs, d.inputs);
  cfg.seed = 9;
  EXPECT_NE(gen_ar2(cfg).inputs, d.inputs);
}

TEST(Ar2, NoiseHasConfiguredSpread) {
  Ar2Config cfg;
  cfg.count = 200;
  cfg.length = 60;
  cfg.seed = 3;
  double sum_sq = 0;
  Index n = 0;
  for (Index s = 0; s < cfg.count; ++s) {
    const Vector x = ar2_series(cfg, s);
    for (Index t = 2; t < x.size(); ++t) {
      const double eps = x(t) - 0.7 * x(t - 1) - 0.25 * x(t - 2);
      sum_sq += eps * eps;
      ++n;
    }
  }
  EXPECT_NEAR(std::sqrt(sum_sq / static_cast<double>(n)), 0.1, 3e-3);
}

TEST(Ar2, InvalidConfig) {
  Ar2Config cfg;
  cfg.window = 1;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg.window = 50;
  EXPECT_THROW(cfg.validate(), UsageError);
}

TEST(TabularShifted, ZeroShiftGivesIdenticalGroups) {
  const ShiftedPair p = gen_tabular_shifted(50, Vector::Zero(4), 7);
  EXPECT_EQ(p.in_distribution.inputs, p.shifted.inputs);
  EXPECT_EQ(p.in_distribution.targets, p.shifted.targets);
  EXPECT_EQ(p.in_distribution.inputs.rows(), 50);
  EXPECT_EQ(p.in_distribution.targets.cols(), 2);
}

TEST(TabularShifted, ShiftTranslatesAndRelabels) {
  Vector shift = Vector::Zero(5);
  shift(0) = 3;
  shift(2) = -3;
  const ShiftedPair p = gen_tabular_shifted(40, shift, 8);
  for (Index r = 0; r < 40; ++r) {
    EXPECT_EQ(p.shifted.inputs.row(r), p.in_distribution.inputs.row(r) + shift.transpose());
    const int label = tabular_label(p.shifted.inputs.row(r).transpose());
    EXPECT_EQ(p.shifted.targets(r, label), 1.0);
  }
  const ShiftedPair one = gen_tabular_shifted(1, shift, 8);
  EXPECT_EQ(one.in_distribution.inputs.rows(), 1);
  EXPECT_EQ(one.shifted.inputs.cols(), 5);
}

TEST(TabularShifted, BothClassesPresent) {
  const ShiftedPair p = gen_tabular_shifted(500, Vector::Zero(10), 9);
  const double positive = p.in_distribution.targets.col(1).mean();
  EXPECT_GT(positive, 0.2);
  EXPECT_LT(positive, 0.8);
}

TEST(Idx, DecodesImages) {
  testing::TempDir dir("idx");
  const auto empty = dir.path() / "empty.idx";
  testing::write_file(empty, idx_header(3, {0, 28, 28}));
  EXPECT_EQ(load_idx_images(empty.string()).rows(), 0);

  const auto zeros = dir.path() / "zeros.idx";
  testing::write_file(zeros, idx_header(3, {1, 28, 28}) + std::string(784, '\0'));
  const Matrix z = load_idx_images(zeros.string());
  ASSERT_EQ(z.rows(), 1);
  ASSERT_EQ(z.cols(), 784);
  EXPECT_EQ(z.maxCoeff(), 0.0);

  // Two 2x2 images, bytes checked one by one.
  const auto small = dir.path() / "small.idx";
  const std::string payload{'\x00', '\xFF', '\x80', '\x01', '\x10', '\x20', '\x30', '\x40'};
  testing::write_file(small, idx_header(3, {2, 2, 2}) + payload);
  const Matrix s = load_idx_images(small.string());
  ASSERT_EQ(s.rows(), 2);
  EXPECT_EQ(s(0, 1), 1.0);
  EXPECT_EQ(s(0, 2), 128.0 / 255.0);
  EXPECT_EQ(s(1, 3), 64.0 / 255.0);
}

TEST(Idx, DecodesLabels) {
  testing::TempDir dir("idxl");
  const auto path = dir.path() / "labels.idx";
  testing::write_file(path, idx_header(1, {3}) + std::string{'\x07', '\x02', '\x01'});
  EXPECT_EQ(load_idx_labels(path.string()), (std::vector<int>{7, 2, 1}));
}

TEST(Idx, StructuredErrors) {
  testing::TempDir dir("idxe");
  const auto bad = dir.path() / "bad.idx";
  testing::write_file(bad, std::string{'\x01', '\x02', '\x08', '\x03'} + std::string(12, '\0'));
  EXPECT_THROW(load_idx_images(bad.string()), DataError);
  const auto labels_as_images = dir.path() / "l.idx";
  testing::write_file(labels_as_images, idx_header(1, {0}));
  EXPECT_THROW(load_idx_images(labels_as_images.string()), DataError);
  const auto truncated = dir.path() / "t.idx";
  testing::write_file(truncated, idx_header(3, {2, 28, 28}) + std::string(784, '\0'));
  EXPECT_THROW(load_idx_images(truncated.string()), DataError);
  const auto short_header = dir.path() / "h.idx";
  testing::write_file(short_header, idx_header(3, {1, 28}));
  EXPECT_THROW(load_idx_images(short_header.string()), DataError);
  const auto overflow = dir.path() / "o.idx";
  testing::write_file(overflow, idx_header(3, {0xFFFFFFFFu, 0xFFFFFFFFu, 0xFFFFFFFFu}));
  EXPECT_THROW(load_idx_images(overflow.string()), DataError);
  EXPECT_THROW(load_idx_images((dir.path() / "missing").string()), DataError);
  const auto short_labels = dir.path() / "sl.idx";
  testing::write_file(short_labels, idx_header(1, {5}) + std::string(2, '\0'));
  EXPECT_THROW(load_idx_labels(short_labels.string()), DataError);
}

TEST(Csv, RoundTripIsExact) {
  CounterRng rng(11);
  Table table;
  table.features = testing::random_matrix(rng, 7, 3, 1e3);
  table.features(0, 0) = 1.0 / 3.0;
  table.features(1, 1) = -0.0;
  table.target = testing::random_vector(rng, 7);
  const std::string text = to_csv(table);
  EXPECT_EQ(text.substr(0, text.find('\n')), "feature_0,feature_1,feature_2,target");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const Table back = parse_csv(text);
  EXPECT_EQ(back.features, table.features);
  ASSERT_TRUE(back.target.has_value());
  EXPECT_EQ(*back.target, *table.target);
  EXPECT_EQ(to_csv(back), text);
}

TEST(Csv, FileRoundTripWithoutTarget) {
  testing::TempDir dir("csv");
  Table table;
  table.features = Matrix::Identity(3, 2);
  const auto path = (dir.path() / "t.csv").string();
  write_csv(path, table);
  const Table back = read_csv(path);
  EXPECT_EQ(back.features, table.features);
  EXPECT_FALSE(back.target.has_value());
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_csv(""), DataError);
  EXPECT_THROW(parse_csv("feature_0,feature_1\n1,2\n3\n"), DataError);
  EXPECT_THROW(parse_csv("feature_0\nabc\n"), DataError);
  EXPECT_THROW(parse_csv("feature_0\nnan\n"), DataError);
  EXPECT_THROW(read_csv("/nonexistent/file.csv"), DataError);
}

TEST(Csv, DatasetConversion) {
  Table table = parse_csv("feature_0,target\n0.5,1\n-1,0\n2,2\n");
  const Dataset d = to_dataset(table, LossKind::kCrossEntropy, 3);
  EXPECT_EQ(d.targets.row(0), Eigen::RowVector3d(0, 1, 0));
  EXPECT_EQ(d.targets.row(2), Eigen::RowVector3d(0, 0, 1));
  const Table back = to_table(d, LossKind::kCrossEntropy);
  EXPECT_EQ(*back.target, *table.target);
  EXPECT_THROW(to_dataset(table, LossKind::kCrossEntropy, 2), DataError);
  const Dataset reg = to_dataset(table, LossKind::kMse, 1);
  EXPECT_EQ(reg.targets(0, 0), 1.0);
  table.target.reset();
  EXPECT_THROW(to_dataset(table, LossKind::kMse, 1), DataError);
}

}  // namespace
}  // namespace simplex

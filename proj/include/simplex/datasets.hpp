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

#ifndef SIMPLEX_DATASETS_HPP_
#define SIMPLEX_DATASETS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simplex/model.hpp"

namespace simplex {

// x_t = phi1 x_{t-1} + phi2 x_{t-2} + eps_t for t = 3..T+1, x_1, x_2 ~ N(0, 1)
// unless `initial` pins them. sign_flip negates phi1 (oscillating variant).
struct Ar2Config {
  double phi1 = 0.7;
  double phi2 = 0.25;
  double noise_sigma = 0.1;  // standard deviation of eps_t
  int length = 50;           // T
  int window = 10;
  int count = 100;           // number of series
  std::uint64_t seed = 0;
  bool sign_flip = false;
  std::optional<std::pair<double, double>> initial;

  void validate() const;
};

// Series `index` of the configuration: T + 1 values x_1 .. x_{T+1}.
Vector ar2_series(const Ar2Config& config, Index index);

// Sliding windows of `window` values with the next value as target; every
// series contributes T + 1 - window rows, series by series.
Dataset gen_ar2(const Ar2Config& config);

struct ShiftedPair {
  Dataset in_distribution;
  Dataset shifted;
};

// Two-class tabular data of dimension shift.size(). Features come from a
// two-component Gaussian mixture (unit variance, means +-0.75); labels come
// from a fixed non-linear rule of the features. Both groups are drawn from
// the same seeded stream; the shifted group has its features translated by
// `shift` before labelling. Targets are one-hot over 2 classes.
ShiftedPair gen_tabular_shifted(Index n_per_group, const Vector& shift,
                                std::uint64_t seed);

// Label rule used by gen_tabular_shifted.
int tabular_label(const Eigen::Ref<const Vector>& x);

// IDX (big-endian) images as rows scaled to [0, 1], and label bytes.
Matrix load_idx_images(const std::string& path);
std::vector<int> load_idx_labels(const std::string& path);

// CSV with header feature_0..feature_{d-1}[,target]; LF endings, 17
// significant digits.
struct Table {
  Matrix features;
  std::optional<Vector> target;
};

void write_csv(const std::string& path, const Table& table);
std::string to_csv(const Table& table);
Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);

// Converts between tables and training pairs. For classification the target
// column holds class indices and becomes one-hot with `classes` columns.
Dataset to_dataset(const Table& table, LossKind loss, Index classes);
Table to_table(const Dataset& data, LossKind loss);

std::string format_double(double value);

}  // namespace simplex

#endif  // SIMPLEX_DATASETS_HPP_

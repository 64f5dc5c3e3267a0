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

#include "simplex/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "simplex/rng.hpp"

namespace simplex {

void Ar2Config::validate() const {
  if (window < 2) throw UsageError("AR window must be >= 2");
  if (length <= window) throw UsageError("AR length must exceed the window");
  if (count < 0) throw UsageError("AR count must be >= 0");
  if (!(noise_sigma >= 0)) throw UsageError("AR noise_sigma must be >= 0");
}

Vector ar2_series(const Ar2Config& config, Index index) {
  config.validate();
  CounterRng rng(config.seed, static_cast<std::uint64_t>(index));
  const double phi1 = config.sign_flip ? -config.phi1 : config.phi1;
  Vector x(config.length + 1);
  if (config.initial) {
    x(0) = config.initial->first;
    x(1) = config.initial->second;
  } else {
    x(0) = rng.normal();
    x(1) = rng.normal();
  }
  for (Index t = 2; t < x.size(); ++t) {
    const double noise = config.noise_sigma > 0 ? rng.normal(0.0, config.noise_sigma) : 0.0;
    x(t) = phi1 * x(t - 1) + config.phi2 * x(t - 2) + noise;
  }
  return x;
}

Dataset gen_ar2(const Ar2Config& config) {
  config.validate();
  const Index per_series = config.length + 1 - config.window;
  Dataset data;
  data.inputs = Matrix(config.count * per_series, config.window);
  data.targets = Matrix(config.count * per_series, 1);
  for (Index s = 0; s < config.count; ++s) {
    const Vector x = ar2_series(config, s);
    for (Index start = 0; start < per_series; ++start) {
      const Index row = s * per_series + start;
      data.inputs.row(row) = x.segment(start, config.window).transpose();
      data.targets(row, 0) = x(start + config.window);
    }
  }
  return data;
}

int tabular_label(const Eigen::Ref<const Vector>& x) {
  const Index d = x.size();
  double score = 0.0;
  for (Index i = 0; i < d; ++i) {
    score += std::cos(static_cast<double>(i)) * x(i);
    score += 0.5 * std::sin(x(i) * x((i + 1) % d));
  }
  return score > 0.0 ? 1 : 0;
}

ShiftedPair gen_tabular_shifted(Index n_per_group, const Vector& shift,
                                std::uint64_t seed) {
  if (n_per_group < 0) throw UsageError("n_per_group must be >= 0");
  if (shift.size() < 1) throw UsageError("shift must have at least one feature");
  const Index d = shift.size();
  CounterRng rng(seed, 0x7AB1E);
  Matrix features(n_per_group, d);
  for (Index r = 0; r < n_per_group; ++r) {
    const double centre = rng.uniform() < 0.5 ? -0.75 : 0.75;
    for (Index i = 0; i < d; ++i) features(r, i) = rng.normal(centre, 1.0);
  }
  auto labelled = [&](const Matrix& x) {
    std::vector<int> labels(static_cast<std::size_t>(x.rows()));
    for (Index r = 0; r < x.rows(); ++r) {
      labels[static_cast<std::size_t>(r)] = tabular_label(x.row(r).transpose());
    }
    return Dataset{x, one_hot(labels, 2)};
  };
  const Matrix moved = features.rowwise() + shift.transpose();
  return ShiftedPair{labelled(features), labelled(moved)};
}

namespace {

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes, std::size_t at) {
  return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
         (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
}

void check_magic(const std::vector<unsigned char>& bytes, unsigned char rank,
                 const std::string& path) {
  if (bytes.size() < 4) throw DataError("IDX '" + path + "': truncated header");
  if (bytes[0] != 0 || bytes[1] != 0 || bytes[2] != 0x08 || bytes[3] != rank) {
    throw DataError("IDX '" + path + "': bad magic bytes");
  }
  if (bytes.size() < 4 + 4 * std::size_t{rank}) {
    throw DataError("IDX '" + path + "': truncated header");
  }
}

}  // namespace

Matrix load_idx_images(const std::string& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  check_magic(bytes, 0x03, path);
  const std::uint64_t items = read_be32(bytes, 4);
  const std::uint64_t rows = read_be32(bytes, 8);
  const std::uint64_t cols = read_be32(bytes, 12);
  const std::uint64_t pixels = rows * cols;
  constexpr std::size_t kHeader = 16;
  if (pixels > 0 && items > (std::numeric_limits<std::uint64_t>::max() / pixels)) {
    throw DataError("IDX '" + path + "': dimension overflow");
  }
  const std::uint64_t payload = items * pixels;
  if (payload > static_cast<std::uint64_t>(std::numeric_limits<Index>::max())) {
    throw DataError("IDX '" + path + "': dimension overflow");
  }
  if (bytes.size() - kHeader < payload) {
    throw DataError("IDX '" + path + "': truncated payload");
  }
  Matrix out(static_cast<Index>(items), static_cast<Index>(pixels));
  for (Index r = 0; r < out.rows(); ++r) {
    for (Index c = 0; c < out.cols(); ++c) {
      out(r, c) = bytes[kHeader + static_cast<std::size_t>(r * out.cols() + c)] / 255.0;
    }
  }
  return out;
}

std::vector<int> load_idx_labels(const std::string& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  check_magic(bytes, 0x01, path);
  const std::uint64_t items = read_be32(bytes, 4);
  constexpr std::size_t kHeader = 8;
  if (bytes.size() - kHeader < items) {
    throw DataError("IDX '" + path + "': truncated payload");
  }
  return std::vector<int>(bytes.begin() + kHeader,
                          bytes.begin() + kHeader + static_cast<std::ptrdiff_t>(items));
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_csv(const Table& table) {
  if (table.target) require_size(table.target->size(), table.features.rows(), "target");
  std::string out;
  for (Index i = 0; i < table.features.cols(); ++i) {
    if (i > 0) out += ',';
    out += "feature_" + std::to_string(i);
  }
  if (table.target) out += table.features.cols() > 0 ? ",target" : "target";
  out += '\n';
  for (Index r = 0; r < table.features.rows(); ++r) {
    for (Index i = 0; i < table.features.cols(); ++i) {
      if (i > 0) out += ',';
      out += format_double(table.features(r, i));
    }
    if (table.target) out += ',' + format_double((*table.target)(r));
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << to_csv(table);
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) header.push_back(cell);
  }
  bool has_target = !header.empty() && header.back() == "target";
  const std::size_t features = header.size() - (has_target ? 1 : 0);
  for (std::size_t i = 0; i < features; ++i) {
    if (header[i] != "feature_" + std::to_string(i)) {
      throw DataError("CSV: unexpected header column '" + header[i] + "'");
    }
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> values;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(value)) {
        throw DataError("CSV line " + std::to_string(line_no) + ": bad number '" +
                        cell + "'");
      }
      values.push_back(value);
    }
    if (values.size() != header.size()) {
      throw DataError("CSV line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " columns");
    }
    rows.push_back(std::move(values));
  }
  Table table;
  table.features = Matrix(static_cast<Index>(rows.size()), static_cast<Index>(features));
  if (has_target) table.target = Vector(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < features; ++i) {
      table.features(static_cast<Index>(r), static_cast<Index>(i)) = rows[r][i];
    }
    if (has_target) (*table.target)(static_cast<Index>(r)) = rows[r].back();
  }
  return table;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

Dataset to_dataset(const Table& table, LossKind loss, Index classes) {
  if (!table.target) throw DataError("dataset CSV needs a target column");
  Dataset data;
  data.inputs = table.features;
  if (loss == LossKind::kCrossEntropy) {
    std::vector<int> labels;
    for (Index r = 0; r < table.target->size(); ++r) {
      const double value = (*table.target)(r);
      if (value != std::floor(value)) {
        throw DataError("classification target must be an integer class index");
      }
      labels.push_back(static_cast<int>(value));
    }
    data.targets = one_hot(labels, classes);
  } else {
    data.targets = *table.target;
  }
  return data;
}

Table to_table(const Dataset& data, LossKind loss) {
  Table table;
  table.features = data.inputs;
  Vector target(data.size());
  for (Index r = 0; r < data.size(); ++r) {
    if (loss == LossKind::kCrossEntropy) {
      Index label = 0;
      data.targets.row(r).maxCoeff(&label);
      target(r) = static_cast<double>(label);
    } else {
      target(r) = data.targets(r, 0);
    }
  }
  table.target = std::move(target);
  return table;
}

}  // namespace simplex

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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "simplex/model.hpp"

namespace simplex {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json values = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) values.push_back(m(r, c));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", values}};
}

json vector_to_json(const Vector& v) {
  json values = json::array();
  for (Index i = 0; i < v.size(); ++i) values.push_back(v(i));
  return values;
}

Matrix matrix_from_json(const json& node) {
  const Index rows = node.at("rows").get<Index>();
  const Index cols = node.at("cols").get<Index>();
  const json& values = node.at("data");
  if (rows < 0 || cols < 0 || static_cast<Index>(values.size()) != rows * cols) {
    throw DataError("checkpoint: matrix data length does not match its shape");
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = values.at(static_cast<std::size_t>(r * cols + c)).get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const json& node) {
  Vector v(static_cast<Index>(node.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = node.at(static_cast<std::size_t>(i)).get<double>();
  }
  return v;
}

}  // namespace

std::string checkpoint_to_json(const SplitModel& model) {
  model.validate();
  json layers = json::array();
  for (const DenseLayer& layer : model.layers) {
    layers.push_back(json{{"activation", to_string(layer.activation)},
                          {"weight", matrix_to_json(layer.weight)},
                          {"bias", vector_to_json(layer.bias)}});
  }
  json doc{{"format_version", kCheckpointFormatVersion},
           {"input_dim", model.input_dim()},
           {"latent_dim", model.latent_dim()},
           {"output_dim", model.output_dim()},
           {"layers", layers},
           {"head",
            {{"weight", matrix_to_json(model.head_weight)},
             {"bias", vector_to_json(model.head_bias)}}}};
  return doc.dump(1) + "\n";
}

SplitModel checkpoint_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("checkpoint: invalid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw DataError("checkpoint: unsupported format_version " +
                      std::to_string(version));
    }
    SplitModel model;
    for (const json& node : doc.at("layers")) {
      DenseLayer layer;
      layer.activation = activation_from_string(node.at("activation").get<std::string>());
      layer.weight = matrix_from_json(node.at("weight"));
      layer.bias = vector_from_json(node.at("bias"));
      model.layers.push_back(std::move(layer));
    }
    model.head_weight = matrix_from_json(doc.at("head").at("weight"));
    model.head_bias = vector_from_json(doc.at("head").at("bias"));
    model.validate();
    if (doc.at("input_dim").get<Index>() != model.input_dim() ||
        doc.at("latent_dim").get<Index>() != model.latent_dim() ||
        doc.at("output_dim").get<Index>() != model.output_dim()) {
      throw DimensionError("checkpoint: declared dimensions disagree with layers");
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint: malformed document: ") + e.what());
  }
}

void save_checkpoint(const SplitModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint '" + path + "'");
  out << checkpoint_to_json(model);
  if (!out) throw DataError("failed writing checkpoint '" + path + "'");
}

SplitModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read checkpoint '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return checkpoint_from_json(buffer.str());
}

}  // namespace simplex

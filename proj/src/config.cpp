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

#include "simplex/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "simplex/error.hpp"

namespace simplex {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text, const std::set<std::string>& allowed,
                           std::filesystem::path base_dir) {
  RunConfig config;
  config.base_dir_ = std::move(base_dir);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!allowed.count(key)) {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" +
                       key + "'");
    }
    if (config.values_.count(key)) {
      throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" +
                       key + "'");
    }
    config.values_[key] = value;
  }
  return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path,
                          const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), allowed, path.parent_path());
}

std::string RunConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("missing config key '" + key + "'");
  return it->second;
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

long long RunConfig::get_int(const std::string& key) const {
  const std::string text = get_string(key);
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0') {
    throw UsageError("config key '" + key + "': expected an integer, got '" + text + "'");
  }
  return value;
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string text = get_string(key);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') {
    throw UsageError("config key '" + key + "': expected a number, got '" + text + "'");
  }
  return value;
}

std::vector<long long> RunConfig::get_int_list(const std::string& key) const {
  std::vector<long long> out;
  std::istringstream cells(get_string(key));
  std::string cell;
  while (std::getline(cells, cell, ',')) {
    cell = trim(cell);
    char* end = nullptr;
    const long long value = std::strtoll(cell.c_str(), &end, 10);
    if (cell.empty() || *end != '\0') {
      throw UsageError("config key '" + key + "': bad list entry '" + cell + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("config key '" + key + "': empty list");
  return out;
}

std::vector<long long> RunConfig::get_int_list(
    const std::string& key, const std::vector<long long>& fallback) const {
  return has(key) ? get_int_list(key) : fallback;
}

std::filesystem::path RunConfig::get_existing_path(const std::string& key) const {
  std::filesystem::path path = get_string(key);
  if (path.is_relative() && !base_dir_.empty()) path = base_dir_ / path;
  if (!std::filesystem::exists(path)) {
    throw DataError("config key '" + key + "': no such file '" + path.string() + "'");
  }
  return path;
}

}  // namespace simplex

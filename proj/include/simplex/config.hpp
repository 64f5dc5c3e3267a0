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

#ifndef SIMPLEX_CONFIG_HPP_
#define SIMPLEX_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace simplex {

// `key = value` settings, one per line; '#' starts a comment. Keys outside
// the allowed set are rejected. Relative paths resolve against the
// directory holding the config file.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text, const std::set<std::string>& allowed,
                         std::filesystem::path base_dir = {});
  static RunConfig load(const std::filesystem::path& path,
                        const std::set<std::string>& allowed);

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<long long> get_int_list(const std::string& key) const;
  std::vector<long long> get_int_list(const std::string& key,
                                      const std::vector<long long>& fallback) const;

  // Resolved path that must exist.
  std::filesystem::path get_existing_path(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_;
};

}  // namespace simplex

#endif  // SIMPLEX_CONFIG_HPP_

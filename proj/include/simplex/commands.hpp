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

#ifndef SIMPLEX_COMMANDS_HPP_
#define SIMPLEX_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "simplex/config.hpp"

namespace simplex {

struct GlobalOptions {
  std::filesystem::path config;
  std::uint64_t seed = 0;
  std::filesystem::path out = ".";
  int jobs = 1;
};

// Each command reads its RunConfig, writes machine output under
// options.out and progress lines to `log`. Failures throw simplex::Error.
void cmd_train(const GlobalOptions& options, std::ostream& log);
void cmd_explain(const GlobalOptions& options, std::ostream& log);
void cmd_benchmark(const GlobalOptions& options, std::ostream& log);
void cmd_detect(const GlobalOptions& options, std::ostream& log);
void cmd_corrupt(const GlobalOptions& options, std::ostream& log);

const std::vector<std::string>& command_names();

// Dispatches by name; returns the process exit code (0 on success) and
// reports failures on `err`.
int run_command(const std::string& name, const GlobalOptions& options,
                std::ostream& log, std::ostream& err);

// Full command line entry point used by the `simplex` binary.
int cli_main(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace simplex

#endif  // SIMPLEX_COMMANDS_HPP_

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

#ifndef SIMPLEX_ERROR_HPP_
#define SIMPLEX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace simplex {

// Values double as process exit codes for the command-line tool.
enum class ErrorKind : int {
  kUsage = 1,
  kData = 2,
  kNumerical = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

// Bad configuration or out-of-range parameters.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::kUsage, message) {}
};

// Unreadable, malformed or inconsistently shaped data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorKind::kData, message) {}
};

class DimensionError : public DataError {
 public:
  explicit DimensionError(const std::string& message) : DataError(message) {}
};

// Non-finite values during optimisation or training.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorKind::kNumerical, message) {}
};

}  // namespace simplex

#endif  // SIMPLEX_ERROR_HPP_

// Copyright 2026 The rleval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rleval {

// Base of every error the library throws. The CLI maps subclasses to exit
// codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments to an API call (out-of-range confidence level, empty input...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `line` is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Data that parsed fine but violates a dataset invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class MissingBoundsError : public ValidationError {
 public:
  explicit MissingBoundsError(const std::string& environment)
      : ValidationError("no return bounds declared for environment '" +
                        environment + "'"),
        environment_(environment) {}
  const std::string& environment() const noexcept { return environment_; }

 private:
  std::string environment_;
};

// An iterative solver gave up before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rleval

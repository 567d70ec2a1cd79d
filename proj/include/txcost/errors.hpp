// Copyright 2026 The txcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TXCOST_ERRORS_HPP_
#define TXCOST_ERRORS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "txcost/grid.hpp"

namespace txcost {

// One finding from a validator. `cell` is set when the finding is anchored to
// a matrix entry so file loaders can map it back to a source line.
struct Diagnostic {
  std::string message;
  std::optional<Cell> cell;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model or rule data violates a documented invariant. Carries every finding,
// not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics)
      : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<Diagnostic>& diagnostics) {
    std::string all;
    for (const auto& d : diagnostics) {
      if (!all.empty()) all += "; ";
      all += d.message;
    }
    return all.empty() ? std::string("validation failed") : all;
  }

  std::vector<Diagnostic> diagnostics_;
};

// Malformed input text; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The request is well-formed but has no answer: argument out of range,
// solver cap exceeded, a design precondition (unique optimum,
// verifiable construction) not met, or a degenerate sweep input.
class RequestError : public Error {
 public:
  using Error::Error;
};

class InfeasiblePairError : public RequestError {
 public:
  explicit InfeasiblePairError(const Cell& c)
      : RequestError("pair " + to_string(c) + " is infeasible") {}
};

class CapExceededError : public RequestError {
 public:
  using RequestError::RequestError;
};

class MultipleOptimaError : public RequestError {
 public:
  using RequestError::RequestError;
};

class DesignError : public RequestError {
 public:
  using RequestError::RequestError;
};

class DegenerateGridError : public RequestError {
 public:
  using RequestError::RequestError;
};

}  // namespace txcost

#endif  // TXCOST_ERRORS_HPP_

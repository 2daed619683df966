// Copyright 2026 The planrec Authors
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

#ifndef PLANREC_ERRORS_HPP
#define PLANREC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace planrec {

/// Lexical or grammatical error in an input file. Carries a 1-based
/// source position so tools can point at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Structurally well-formed input that violates a semantic rule
/// (duplicate ids, arity mismatches, references to unknown names).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Failure inside an inference session (recursion limit, broken
/// parsimony chain). Indicates bad input data or an internal bug, not
/// a recoverable condition.
class InferenceError : public std::runtime_error {
 public:
  explicit InferenceError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Demo synthesis gave up (constraint rejection budget exhausted).
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace planrec

#endif  // PLANREC_ERRORS_HPP

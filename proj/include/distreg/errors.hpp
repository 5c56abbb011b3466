// Copyright 2026 The distreg Authors. All Rights Reserved.
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

namespace distreg {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid caller-supplied data (empty bags, non-finite values, bad shapes).
class InputError : public Error {
 public:
  using Error::Error;
};

// The input state has no component inside the span retained by the model,
// so neither the RN ratio nor the outcome probabilities are defined.
class SpanError : public Error {
 public:
  using Error::Error;
};

// Factorization or iteration failure (indefinite matrix, no convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. line() is 1-based, 0 when not line-specific.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace distreg

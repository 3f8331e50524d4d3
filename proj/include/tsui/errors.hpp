// Copyright 2026 The tsui Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace tsui {

/// A physical or numerical parameter lies outside the modeled domain
/// (gain below 1, transmission outside [0,1], empty grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested computation is well-formed but not supported by the model,
/// e.g. asking for the quantum Cramer-Rao bound of a lossy state.
class UnsupportedConfiguration : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Fock-space truncation dropped more probability than the oracle tolerates.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double deficit, int cutoff)
      : std::runtime_error(what), deficit_(deficit), cutoff_(cutoff) {}
  double deficit() const noexcept { return deficit_; }
  int cutoff() const noexcept { return cutoff_; }

 private:
  double deficit_;
  int cutoff_;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")"
                                : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tsui

// Copyright 2026 The apnforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
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

namespace apnforge {

/// Raised when an operation's mathematical precondition does not hold
/// (reducible modulus, zero inverse, field too large, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact division by a linear form left a nonzero remainder.
class NotDivisible : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A family's parameter constraint failed; the message names the condition.
class ConstraintViolated : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed polynomial text. `position` is a 0-based offset into the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace apnforge

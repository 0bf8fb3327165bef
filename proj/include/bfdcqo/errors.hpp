// Copyright 2026 The bfdcqo Authors
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

#include <stdexcept>
#include <string>

namespace bfdcqo {

/// Sizes of two operands (or of a problem and an assignment) do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter violates its documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Second nested-commutator norm vanished, so the first-order gauge
/// coefficient is undefined.
class DegenerateDriveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coupling reaches further than the window of the exact chain solver.
class RangeViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gate support not representable on the MPS backend.
class UnsupportedGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// AR/DS requested against a zero reference energy.
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested register is larger than the backend cap.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed or schema-incompatible input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfdcqo

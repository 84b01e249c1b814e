// Copyright 2026 The ballq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BALLQ_ERROR_HPP
#define BALLQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ballq {

// Invalid group data: not fixed point free, wrong dimension, bad exponents.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller violated an operation's preconditions (order mismatch, bad bounds).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A point outside the open unit ball, or a singular denominator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exact computation produced a result that the mathematics rules out,
// e.g. an irrational character sum or a residual that vanishes for m >= 2.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ballq

#endif  // BALLQ_ERROR_HPP

// Copyright 2026 The blochflow Authors
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

#ifndef BLOCHFLOW_ERRORS_HPP
#define BLOCHFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blochflow {

// Zero or otherwise unrepresentable state vector.
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// phi/chi rates requested at theta = 0 or pi, where they carry 1/sin(theta).
class PoleSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inconsistent or out-of-range configuration (noise laws, stop rules, CLI).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blochflow

#endif  // BLOCHFLOW_ERRORS_HPP

// Copyright 2026 The mobqc Authors
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

namespace mobqc {

/// Malformed user input: bad JSON, unknown keys, inconsistent parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not reach its target (e.g. calibration).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Postselection on a measurement branch with (numerically) zero probability.
class ImpossibleBranch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The session engine caught a party touching a qubit it does not own.
class ChannelViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mobqc

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

#include <string>
#include <string_view>
#include <vector>

#include "mobqc/state.h"

namespace mobqc {

enum class Pauli : std::uint8_t { I, X, Y, Z };

Matrix2 pauli_matrix(Pauli p);
char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// sign * P_0 (x) P_1 (x) ... (x) P_(n-1)
struct PauliString {
  std::vector<Pauli> paulis;
  int sign = 1;

  int num_qubits() const { return static_cast<int>(paulis.size()); }
  bool is_identity() const;
  /// "+ZXZI" style; the sign is always printed.
  std::string to_string() const;
  /// Accepts an optional leading '+' or '-', then one of IXYZ per qubit
  /// ('_' is accepted for I).
  static PauliString parse(std::string_view text);

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

StateVector apply_pauli_string(const StateVector& state, const PauliString& p);
double expectation(const StateVector& state, const PauliString& p);
double expectation(const DensityMatrix& state, const PauliString& p);

}  // namespace mobqc

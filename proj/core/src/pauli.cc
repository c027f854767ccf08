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

#include "mobqc/pauli.h"

#include <algorithm>
#include <stdexcept>

namespace mobqc {
namespace {

void check_size(const PauliString& p, int n) {
  if (p.num_qubits() != n) throw std::invalid_argument("Pauli string length != qubit count");
}

}  // namespace

Matrix2 pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::I:
      return gates::identity();
    case Pauli::X:
      return gates::pauli_x();
    case Pauli::Y:
      return gates::pauli_y();
    case Pauli::Z:
      return gates::pauli_z();
  }
  throw std::invalid_argument("pauli_matrix: bad Pauli");
}

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
    case '_':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

bool PauliString::is_identity() const {
  return std::all_of(paulis.begin(), paulis.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::to_string() const {
  std::string s(1, sign < 0 ? '-' : '+');
  for (Pauli p : paulis) s.push_back(pauli_char(p));
  return s;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString out;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    out.sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  for (char c : text) out.paulis.push_back(pauli_from_char(c));
  return out;
}

StateVector apply_pauli_string(const StateVector& state, const PauliString& p) {
  check_size(p, state.num_qubits());
  StateVector out = state;
  for (int q = 0; q < p.num_qubits(); ++q) {
    if (p.paulis[static_cast<std::size_t>(q)] != Pauli::I) {
      out = apply_1q_gate(std::move(out), q, pauli_matrix(p.paulis[static_cast<std::size_t>(q)]));
    }
  }
  if (p.sign < 0) return StateVector(out.num_qubits(), -out.amplitudes());
  return out;
}

double expectation(const StateVector& state, const PauliString& p) {
  return inner_product(state, apply_pauli_string(state, p)).real();
}

double expectation(const DensityMatrix& state, const PauliString& p) {
  check_size(p, state.num_qubits());
  // P|j> = phase(j) |j ^ flip>, so tr(P rho) = sum_j phase(j) rho(j, j ^ flip).
  const int n = state.num_qubits();
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q) {
    const Pauli pq = p.paulis[static_cast<std::size_t>(q)];
    if (pq == Pauli::X || pq == Pauli::Y) flip |= std::size_t{1} << (n - 1 - q);
  }
  Complex total = 0.0;
  for (std::size_t j = 0; j < state.dim(); ++j) {
    Complex phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const bool set = (j >> (n - 1 - q)) & 1u;
      switch (p.paulis[static_cast<std::size_t>(q)]) {
        case Pauli::Z:
          if (set) phase = -phase;
          break;
        case Pauli::Y:
          phase *= set ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
          break;
        default:
          break;
      }
    }
    total += phase * state.matrix()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ flip));
  }
  return p.sign * total.real();
}

}  // namespace mobqc

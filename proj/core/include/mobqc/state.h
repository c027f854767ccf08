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

// Exact small-register simulation: state vectors, density matrices,
// local gates, projective measurement in arbitrary local bases.
//
// Qubit 0 is the most significant bit of the computational index, so the
// amplitude of |b0 b1 ... b(n-1)> sits at index sum_k b_k 2^(n-1-k). Register
// index k corresponds to qubit label k+1 in the cluster-state literature.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mobqc/rng.h"

namespace mobqc {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Ket2 = Eigen::Vector2cd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities (norms, traces, unitarity).
inline constexpr double kAlgebraicTol = 1e-10;
/// Tolerance for results of optimization or iteration.
inline constexpr double kIterativeTol = 1e-9;
/// Branches below this probability are treated as impossible.
inline constexpr double kImpossibleBranch = 1e-12;

namespace gates {
Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
/// (Z + X)/sqrt(2)
Matrix2 hadamard();
/// (Z + Y)/sqrt(2)
Matrix2 hadamard_y();
Matrix2 phase_s();
Matrix2 phase_sdg();
/// Rz(alpha) Ry(beta) Rz(gamma); covers SU(2), so every single-qubit unitary
/// up to global phase.
Matrix2 euler_zyz(double alpha, double beta, double gamma);
bool is_unitary(const Matrix2& m, double tol = kAlgebraicTol);
}  // namespace gates

namespace kets {
Ket2 zero();
Ket2 one();
Ket2 plus();
Ket2 minus();
Ket2 plus_i();
Ket2 minus_i();
}  // namespace kets

/// Measurement outcome. Plus (bit 0) is the +1 eigenvalue.
enum class Outcome : std::uint8_t { Plus = 0, Minus = 1 };

constexpr int bit(Outcome o) { return static_cast<int>(o); }
constexpr Outcome outcome_from_bit(int b) { return (b & 1) ? Outcome::Minus : Outcome::Plus; }
constexpr Outcome flip(Outcome o) { return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus; }

class MeasurementBasis {
 public:
  enum class Kind : std::uint8_t { PauliX, PauliY, PauliZ, Bloch };

  static MeasurementBasis x() { return MeasurementBasis(Kind::PauliX, kHalfPi, 0.0); }
  static MeasurementBasis y() { return MeasurementBasis(Kind::PauliY, kHalfPi, kHalfPi); }
  static MeasurementBasis z() { return MeasurementBasis(Kind::PauliZ, 0.0, 0.0); }
  /// Outcome 0 projects on cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
  static MeasurementBasis bloch(double theta, double phi) {
    return MeasurementBasis(Kind::Bloch, theta, phi);
  }

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// Eigenvector selected by `outcome`. Pauli kinds use the exact kets.
  Ket2 eigenvector(Outcome outcome) const;
  /// Unitary whose rows are <b_0| and <b_1|; maps the basis onto Z.
  Matrix2 to_computational() const;
  /// Projector |b_o><b_o|.
  Matrix2 projector(Outcome outcome) const;
  /// 'X', 'Y', 'Z' or 'B'.
  char label() const;

  friend bool operator==(const MeasurementBasis&, const MeasurementBasis&) = default;

 private:
  static constexpr double kHalfPi = 1.57079632679489661923;
  MeasurementBasis(Kind kind, double theta, double phi) : kind_(kind), theta_(theta), phi_(phi) {}

  Kind kind_;
  double theta_;
  double phi_;
};

/// Pure state on num_qubits qubits. Always normalized.
class StateVector {
 public:
  /// Throws std::invalid_argument unless the length is 2^num_qubits and the
  /// norm is 1 within kAlgebraicTol.
  StateVector(int num_qubits, CVector amplitudes);

  static StateVector basis_state(int num_qubits, std::size_t index);
  /// Rescales to unit norm; throws on the zero vector or a bad length.
  static StateVector normalized(CVector amplitudes);
  /// Tensor product of single-qubit kets, first ket = qubit 0.
  static StateVector product(std::span<const Ket2> kets);
  static StateVector product(std::initializer_list<Ket2> kets) {
    return product(std::span<const Ket2>(kets.begin(), kets.size()));
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

 private:
  int num_qubits_;
  CVector amplitudes_;
};

/// Mixed state. Hermitian with unit trace; positivity is checked by
/// is_physical() rather than on every construction.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument unless square 2^n, Hermitian and trace 1
  /// within kAlgebraicTol.
  DensityMatrix(int num_qubits, CMatrix matrix);
  explicit DensityMatrix(const StateVector& pure);

  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  double trace() const { return matrix_.trace().real(); }
  double min_eigenvalue() const;
  /// Hermitian, trace one and eigenvalues >= -tol.
  bool is_physical(double tol = kIterativeTol) const;

 private:
  int num_qubits_;
  CMatrix matrix_;
};

StateVector apply_1q_gate(StateVector state, int qubit, const Matrix2& gate);
DensityMatrix apply_1q_gate(DensityMatrix state, int qubit, const Matrix2& gate);

StateVector apply_cz(StateVector state, int qubit_a, int qubit_b);
DensityMatrix apply_cz(DensityMatrix state, int qubit_a, int qubit_b);

struct BranchProbabilities {
  double p0;
  double p1;
  double operator[](Outcome o) const { return o == Outcome::Plus ? p0 : p1; }
};

BranchProbabilities born_probabilities(const StateVector& state, int qubit,
                                       const MeasurementBasis& basis);
BranchProbabilities born_probabilities(const DensityMatrix& state, int qubit,
                                       const MeasurementBasis& basis);

template <class State>
struct Projected {
  double probability;
  State state;
};

/// Postselects `outcome`. The measured qubit stays in the register as the
/// basis eigenstate. Throws ImpossibleBranch below kImpossibleBranch.
Projected<StateVector> project(const StateVector& state, int qubit, const MeasurementBasis& basis,
                               Outcome outcome);
Projected<DensityMatrix> project(const DensityMatrix& state, int qubit,
                                 const MeasurementBasis& basis, Outcome outcome);

template <class State>
struct Measured {
  Outcome outcome;
  State state;
};

Measured<StateVector> measure(const StateVector& state, int qubit, const MeasurementBasis& basis,
                              Rng& rng);
Measured<DensityMatrix> measure(const DensityMatrix& state, int qubit,
                                const MeasurementBasis& basis, Rng& rng);

struct QubitBasis {
  int qubit;
  MeasurementBasis basis;
};

/// Joint outcome distribution of measuring the listed qubits (others are
/// marginalized). Outcome index has the first listed qubit as its most
/// significant bit.
std::vector<double> joint_probabilities(const StateVector& state,
                                        std::span<const QubitBasis> measured);
std::vector<double> joint_probabilities(const DensityMatrix& state,
                                        std::span<const QubitBasis> measured);

/// Reduced state on `keep` (in ascending register order).
DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep);
DensityMatrix reduced_density_matrix(const StateVector& state, std::span<const int> keep);

Complex inner_product(const StateVector& bra, const StateVector& ket);
/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
/// <target|rho|target>
double fidelity(const DensityMatrix& rho, const StateVector& target);
/// |<a|b>| = 1 within tol.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol = kIterativeTol);

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Applies an arbitrary (not necessarily unitary) 2x2 operator M as
/// rho -> M rho M^dagger without renormalizing. Building block for Kraus maps.
CMatrix apply_local_sandwich(const CMatrix& rho, int num_qubits, int qubit, const Matrix2& op);

/// Dense 2^n x 2^n matrix of a product of single-qubit operators.
CMatrix kron_all(std::span<const Matrix2> factors);

/// Haar-random pure state from complex Gaussian amplitudes.
StateVector random_pure_state(int num_qubits, Rng& rng);

}  // namespace mobqc

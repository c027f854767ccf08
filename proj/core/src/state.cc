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

#include "mobqc/state.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "mobqc/errors.h"

namespace mobqc {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Complex kI(0.0, 1.0);

bool is_power_of_two_len(Eigen::Index len, int num_qubits) {
  return num_qubits >= 0 && num_qubits < 31 && len == (Eigen::Index{1} << num_qubits);
}

void check_qubit(int qubit, int num_qubits, const char* what) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(qubit) +
                            " out of range for " + std::to_string(num_qubits) + " qubits");
  }
}

std::size_t stride_of(int qubit, int num_qubits) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

// Applies m to the qubit whose index bit has weight `stride` in a vector of
// `dim` elements spaced `step` apart.
void apply_local(Complex* data, std::size_t dim, std::size_t stride, std::size_t step,
                 const Matrix2& m) {
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      Complex& a = data[i * step];
      Complex& b = data[(i + stride) * step];
      const Complex a0 = a, b0 = b;
      a = m00 * a0 + m01 * b0;
      b = m10 * a0 + m11 * b0;
    }
  }
}

void apply_left(CMatrix& rho, int num_qubits, int qubit, const Matrix2& m) {
  const std::size_t dim = static_cast<std::size_t>(rho.rows());
  const std::size_t stride = stride_of(qubit, num_qubits);
  for (Eigen::Index c = 0; c < rho.cols(); ++c) apply_local(rho.col(c).data(), dim, stride, 1, m);
}

// rho -> rho m^dagger, row by row (column-major storage: row elements are
// `rows` apart).
void apply_right_adjoint(CMatrix& rho, int num_qubits, int qubit, const Matrix2& m) {
  const std::size_t dim = static_cast<std::size_t>(rho.cols());
  const std::size_t stride = stride_of(qubit, num_qubits);
  const Matrix2 mc = m.conjugate();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    apply_local(rho.data() + r, dim, stride, static_cast<std::size_t>(rho.rows()), mc);
  }
}

void require_unitary(const Matrix2& gate) {
  if (!gates::is_unitary(gate)) throw std::invalid_argument("apply_1q_gate: gate is not unitary");
}

void check_pair(int a, int b, int n, const char* what) {
  check_qubit(a, n, what);
  check_qubit(b, n, what);
  if (a == b) throw std::invalid_argument(std::string(what) + ": qubits must differ");
}

DensityMatrix make_dm_trusted(int n, CMatrix m) {
  // Enforce exact Hermiticity so rounding never trips the constructor check.
  CMatrix h = 0.5 * (m + m.adjoint());
  return DensityMatrix(n, std::move(h));
}

}  // namespace

// ---------------------------------------------------------------------------
// gates / kets

namespace gates {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, -kI, kI, 0;
  return m;
}
Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
Matrix2 hadamard() { return (pauli_z() + pauli_x()) * kInvSqrt2; }
Matrix2 hadamard_y() { return (pauli_z() + pauli_y()) * kInvSqrt2; }
Matrix2 phase_s() {
  Matrix2 m;
  m << 1, 0, 0, kI;
  return m;
}
Matrix2 phase_sdg() {
  Matrix2 m;
  m << 1, 0, 0, -kI;
  return m;
}
Matrix2 euler_zyz(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    Matrix2 m;
    m << std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2);
    return m;
  };
  Matrix2 ry;
  ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
  return rz(alpha) * ry * rz(gamma);
}
bool is_unitary(const Matrix2& m, double tol) {
  return ((m.adjoint() * m) - Matrix2::Identity()).cwiseAbs().maxCoeff() <= tol;
}
}  // namespace gates

namespace kets {
Ket2 zero() { return Ket2(1.0, 0.0); }
Ket2 one() { return Ket2(0.0, 1.0); }
Ket2 plus() { return Ket2(kInvSqrt2, kInvSqrt2); }
Ket2 minus() { return Ket2(kInvSqrt2, -kInvSqrt2); }
Ket2 plus_i() { return Ket2(kInvSqrt2, kI * kInvSqrt2); }
Ket2 minus_i() { return Ket2(kInvSqrt2, -kI * kInvSqrt2); }
}  // namespace kets

// ---------------------------------------------------------------------------
// MeasurementBasis

Ket2 MeasurementBasis::eigenvector(Outcome outcome) const {
  const bool up = outcome == Outcome::Plus;
  switch (kind_) {
    case Kind::PauliX:
      return up ? kets::plus() : kets::minus();
    case Kind::PauliY:
      return up ? kets::plus_i() : kets::minus_i();
    case Kind::PauliZ:
      return up ? kets::zero() : kets::one();
    case Kind::Bloch:
      break;
  }
  const double c = std::cos(theta_ / 2), s = std::sin(theta_ / 2);
  const Complex e = std::polar(1.0, phi_);
  return up ? Ket2(c, e * s) : Ket2(s, -e * c);
}

Matrix2 MeasurementBasis::to_computational() const {
  Matrix2 m;
  m.row(0) = eigenvector(Outcome::Plus).adjoint();
  m.row(1) = eigenvector(Outcome::Minus).adjoint();
  return m;
}

Matrix2 MeasurementBasis::projector(Outcome outcome) const {
  const Ket2 v = eigenvector(outcome);
  return v * v.adjoint();
}

char MeasurementBasis::label() const {
  switch (kind_) {
    case Kind::PauliX:
      return 'X';
    case Kind::PauliY:
      return 'Y';
    case Kind::PauliZ:
      return 'Z';
    case Kind::Bloch:
      break;
  }
  return 'B';
}

// ---------------------------------------------------------------------------
// StateVector / DensityMatrix

StateVector::StateVector(int num_qubits, CVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (!is_power_of_two_len(amplitudes_.size(), num_qubits_)) {
    throw std::invalid_argument("StateVector: length must be 2^num_qubits");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kAlgebraicTol) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
}

StateVector StateVector::basis_state(int num_qubits, std::size_t index) {
  if (num_qubits < 0 || num_qubits >= 31) throw std::invalid_argument("basis_state: bad size");
  CVector v = CVector::Zero(Eigen::Index{1} << num_qubits);
  if (index >= static_cast<std::size_t>(v.size())) {
    throw std::out_of_range("basis_state: index out of range");
  }
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::normalized(CVector amplitudes) {
  const Eigen::Index len = amplitudes.size();
  int n = 0;
  while ((Eigen::Index{1} << n) < len) ++n;
  if (!is_power_of_two_len(len, n)) throw std::invalid_argument("normalized: length not 2^n");
  const double norm = amplitudes.norm();
  if (!(norm > kImpossibleBranch)) throw std::invalid_argument("normalized: zero vector");
  amplitudes /= norm;
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::product(std::span<const Ket2> kets) {
  CVector v = CVector::Ones(1);
  for (const Ket2& k : kets) {
    CVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] * k[0];
      next[2 * i + 1] = v[i] * k[1];
    }
    v = std::move(next);
  }
  return normalized(std::move(v));
}

DensityMatrix::DensityMatrix(int num_qubits, CMatrix matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || !is_power_of_two_len(matrix_.rows(), num_qubits_)) {
    throw std::invalid_argument("DensityMatrix: must be square of size 2^num_qubits");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraicTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kAlgebraicTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
}

DensityMatrix::DensityMatrix(const StateVector& pure)
    : num_qubits_(pure.num_qubits()),
      matrix_(pure.amplitudes() * pure.amplitudes().adjoint()) {}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  return DensityMatrix(num_qubits, CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double tol) const {
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol) return false;
  return min_eigenvalue() >= -tol;
}

// ---------------------------------------------------------------------------
// Gates

StateVector apply_1q_gate(StateVector state, int qubit, const Matrix2& gate) {
  check_qubit(qubit, state.num_qubits(), "apply_1q_gate");
  require_unitary(gate);
  CVector amps = state.amplitudes();
  apply_local(amps.data(), state.dim(), stride_of(qubit, state.num_qubits()), 1, gate);
  return StateVector::normalized(std::move(amps));
}

DensityMatrix apply_1q_gate(DensityMatrix state, int qubit, const Matrix2& gate) {
  check_qubit(qubit, state.num_qubits(), "apply_1q_gate");
  require_unitary(gate);
  return make_dm_trusted(state.num_qubits(),
                         apply_local_sandwich(state.matrix(), state.num_qubits(), qubit, gate));
}

CMatrix apply_local_sandwich(const CMatrix& rho, int num_qubits, int qubit, const Matrix2& op) {
  CMatrix out = rho;
  apply_left(out, num_qubits, qubit, op);
  apply_right_adjoint(out, num_qubits, qubit, op);
  return out;
}

namespace {
bool both_set(std::size_t index, int a, int b, int n) {
  return (index & stride_of(a, n)) && (index & stride_of(b, n));
}
}  // namespace

StateVector apply_cz(StateVector state, int qubit_a, int qubit_b) {
  const int n = state.num_qubits();
  check_pair(qubit_a, qubit_b, n, "apply_cz");
  CVector amps = state.amplitudes();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (both_set(i, qubit_a, qubit_b, n)) amps[static_cast<Eigen::Index>(i)] *= -1.0;
  }
  return StateVector(n, std::move(amps));
}

DensityMatrix apply_cz(DensityMatrix state, int qubit_a, int qubit_b) {
  const int n = state.num_qubits();
  check_pair(qubit_a, qubit_b, n, "apply_cz");
  CMatrix m = state.matrix();
  for (std::size_t r = 0; r < state.dim(); ++r) {
    const double sr = both_set(r, qubit_a, qubit_b, n) ? -1.0 : 1.0;
    for (std::size_t c = 0; c < state.dim(); ++c) {
      const double sc = both_set(c, qubit_a, qubit_b, n) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *= sr * sc;
    }
  }
  return DensityMatrix(n, std::move(m));
}

// ---------------------------------------------------------------------------
// Measurement

BranchProbabilities born_probabilities(const StateVector& state, int qubit,
                                       const MeasurementBasis& basis) {
  check_qubit(qubit, state.num_qubits(), "born_probabilities");
  const Ket2 b0 = basis.eigenvector(Outcome::Plus);
  const std::size_t stride = stride_of(qubit, state.num_qubits());
  const CVector& a = state.amplitudes();
  double p0 = 0.0;
  for (std::size_t base = 0; base < state.dim(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex amp = std::conj(b0[0]) * a[static_cast<Eigen::Index>(i)] +
                          std::conj(b0[1]) * a[static_cast<Eigen::Index>(i + stride)];
      p0 += std::norm(amp);
    }
  }
  p0 = std::clamp(p0, 0.0, 1.0);
  return {p0, 1.0 - p0};
}

BranchProbabilities born_probabilities(const DensityMatrix& state, int qubit,
                                       const MeasurementBasis& basis) {
  check_qubit(qubit, state.num_qubits(), "born_probabilities");
  const Matrix2 proj = basis.projector(Outcome::Plus);
  const std::size_t stride = stride_of(qubit, state.num_qubits());
  const CMatrix& m = state.matrix();
  double p0 = 0.0;
  // tr(P rho) = sum over the 2x2 blocks that share all other bits.
  for (std::size_t base = 0; base < state.dim(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const auto lo = static_cast<Eigen::Index>(i);
      const auto hi = static_cast<Eigen::Index>(i + stride);
      p0 += (proj(0, 0) * m(lo, lo) + proj(0, 1) * m(hi, lo) + proj(1, 0) * m(lo, hi) +
             proj(1, 1) * m(hi, hi))
                .real();
    }
  }
  p0 = std::clamp(p0, 0.0, 1.0);
  return {p0, 1.0 - p0};
}

Projected<StateVector> project(const StateVector& state, int qubit, const MeasurementBasis& basis,
                               Outcome outcome) {
  check_qubit(qubit, state.num_qubits(), "project");
  CVector amps = state.amplitudes();
  apply_local(amps.data(), state.dim(), stride_of(qubit, state.num_qubits()), 1,
              basis.projector(outcome));
  const double p = amps.squaredNorm();
  if (p < kImpossibleBranch) {
    throw ImpossibleBranch("project: postselected outcome has zero probability");
  }
  return {p, StateVector(state.num_qubits(), amps / std::sqrt(p))};
}

Projected<DensityMatrix> project(const DensityMatrix& state, int qubit,
                                 const MeasurementBasis& basis, Outcome outcome) {
  check_qubit(qubit, state.num_qubits(), "project");
  CMatrix m = apply_local_sandwich(state.matrix(), state.num_qubits(), qubit,
                                   basis.projector(outcome));
  const double p = m.trace().real();
  if (p < kImpossibleBranch) {
    throw ImpossibleBranch("project: postselected outcome has zero probability");
  }
  return {p, make_dm_trusted(state.num_qubits(), m / p)};
}

namespace {
template <class State>
Measured<State> measure_impl(const State& state, int qubit, const MeasurementBasis& basis,
                             Rng& rng) {
  const BranchProbabilities p = born_probabilities(state, qubit, basis);
  const Outcome o = uniform01(rng) < p.p0 ? Outcome::Plus : Outcome::Minus;
  return {o, project(state, qubit, basis, o).state};
}
}  // namespace

Measured<StateVector> measure(const StateVector& state, int qubit, const MeasurementBasis& basis,
                              Rng& rng) {
  return measure_impl(state, qubit, basis, rng);
}

Measured<DensityMatrix> measure(const DensityMatrix& state, int qubit,
                                const MeasurementBasis& basis, Rng& rng) {
  return measure_impl(state, qubit, basis, rng);
}

namespace {
void check_measured(std::span<const QubitBasis> measured, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const QubitBasis& qb : measured) {
    check_qubit(qb.qubit, n, "joint_probabilities");
    if (seen[static_cast<std::size_t>(qb.qubit)]) {
      throw std::invalid_argument("joint_probabilities: qubit listed twice");
    }
    seen[static_cast<std::size_t>(qb.qubit)] = true;
  }
}

std::size_t outcome_index(std::size_t full_index, std::span<const QubitBasis> measured, int n) {
  std::size_t out = 0;
  for (const QubitBasis& qb : measured) {
    out = (out << 1) | ((full_index & stride_of(qb.qubit, n)) ? 1u : 0u);
  }
  return out;
}
}  // namespace

std::vector<double> joint_probabilities(const StateVector& state,
                                        std::span<const QubitBasis> measured) {
  const int n = state.num_qubits();
  check_measured(measured, n);
  CVector amps = state.amplitudes();
  for (const QubitBasis& qb : measured) {
    apply_local(amps.data(), state.dim(), stride_of(qb.qubit, n), 1, qb.basis.to_computational());
  }
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    probs[outcome_index(i, measured, n)] += std::norm(amps[static_cast<Eigen::Index>(i)]);
  }
  return probs;
}

std::vector<double> joint_probabilities(const DensityMatrix& state,
                                        std::span<const QubitBasis> measured) {
  const int n = state.num_qubits();
  check_measured(measured, n);
  CMatrix m = state.matrix();
  for (const QubitBasis& qb : measured) {
    m = apply_local_sandwich(m, n, qb.qubit, qb.basis.to_computational());
  }
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    probs[outcome_index(i, measured, n)] += std::max(0.0, m(k, k).real());
  }
  return probs;
}

// ---------------------------------------------------------------------------
// Partial trace, fidelity, products

DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit in keep set");
  }
  for (int q : kept) check_qubit(q, n, "partial_trace");
  const int k = static_cast<int>(kept.size());
  if (k == n) return state;

  std::size_t keep_mask = 0;
  for (int q : kept) keep_mask |= stride_of(q, n);
  auto reduced_index = [&](std::size_t full) {
    std::size_t r = 0;
    for (int q : kept) r = (r << 1) | ((full & stride_of(q, n)) ? 1u : 0u);
    return r;
  };

  const Eigen::Index rd = Eigen::Index{1} << k;
  CMatrix out = CMatrix::Zero(rd, rd);
  const CMatrix& m = state.matrix();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const std::size_t env_i = i & ~keep_mask;
    const auto ri = static_cast<Eigen::Index>(reduced_index(i));
    for (std::size_t j = 0; j < state.dim(); ++j) {
      if ((j & ~keep_mask) != env_i) continue;
      out(ri, static_cast<Eigen::Index>(reduced_index(j))) +=
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return make_dm_trusted(k, std::move(out));
}

DensityMatrix reduced_density_matrix(const StateVector& state, std::span<const int> keep) {
  return partial_trace(DensityMatrix(state), keep);
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  return bra.amplitudes().dot(ket.amplitudes());  // Eigen's dot conjugates the left operand.
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (rho.dim() != target.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Complex f = target.amplitudes().dot(rho.matrix() * target.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return std::abs(std::abs(inner_product(a, b)) - 1.0) <= tol;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  CVector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    v.segment(static_cast<Eigen::Index>(i * b.dim()), static_cast<Eigen::Index>(b.dim())) =
        a[i] * b.amplitudes();
  }
  return StateVector(a.num_qubits() + b.num_qubits(), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const auto da = static_cast<Eigen::Index>(a.dim()), db = static_cast<Eigen::Index>(b.dim());
  CMatrix m(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  }
  return make_dm_trusted(a.num_qubits() + b.num_qubits(), std::move(m));
}

CMatrix kron_all(std::span<const Matrix2> factors) {
  CMatrix out = CMatrix::Ones(1, 1);
  for (const Matrix2& f : factors) {
    CMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
    }
    out = std::move(next);
  }
  return out;
}

StateVector random_pure_state(int num_qubits, Rng& rng) {
  if (num_qubits < 1) throw std::invalid_argument("random_pure_state: need at least one qubit");
  auto gaussian = [&rng] {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  CVector amps(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gaussian();
    amps[i] = Complex(re, gaussian());
  }
  return StateVector::normalized(std::move(amps));
}

}  // namespace mobqc

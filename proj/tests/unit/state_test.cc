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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.h"
#include "generators.h"
#include "mobqc/errors.h"
#include "mobqc/state.h"
#include "stats.h"

namespace mobqc {
namespace {

constexpr double kTol = 1e-10;

oracle::Vec ket_of(const Ket2& k) { return k; }

TEST(Gates, NamedMatricesAreUnitary) {
  for (const Matrix2& g : {gates::identity(), gates::pauli_x(), gates::pauli_y(), gates::pauli_z(),
                           gates::hadamard(), gates::hadamard_y(), gates::phase_s(), gates::phase_sdg()}) {
    EXPECT_TRUE(gates::is_unitary(g));
  }
  EXPECT_FALSE(gates::is_unitary(2.0 * gates::identity()));
}

TEST(Gates, HadamardVariantsAreSelfInverseSums) {
  EXPECT_TRUE(gates::hadamard().isApprox((gates::pauli_z() + gates::pauli_x()) / std::sqrt(2.0)));
  EXPECT_TRUE(gates::hadamard_y().isApprox((gates::pauli_z() + gates::pauli_y()) / std::sqrt(2.0)));
  EXPECT_TRUE((gates::hadamard_y() * gates::hadamard_y()).isApprox(gates::identity()));
  EXPECT_TRUE((gates::phase_s() * gates::phase_sdg()).isApprox(gates::identity()));
}

TEST(Gates, EulerZeroIsIdentity) {
  EXPECT_TRUE(gates::euler_zyz(0, 0, 0).isApprox(gates::identity()));
}

TEST(MeasurementBasis, EigenvectorsAndProjectors) {
  Rng rng(11);
  std::vector<MeasurementBasis> bases{MeasurementBasis::x(), MeasurementBasis::y(), MeasurementBasis::z()};
  for (int i = 0; i < 10; ++i) bases.push_back(MeasurementBasis::bloch(gen::angle(rng) / 2, gen::angle(rng)));
  for (const MeasurementBasis& b : bases) {
    const Ket2 v0 = b.eigenvector(Outcome::Plus), v1 = b.eigenvector(Outcome::Minus);
    EXPECT_NEAR(std::abs(v0.dot(v1)), 0.0, kTol);
    EXPECT_TRUE((b.projector(Outcome::Plus) + b.projector(Outcome::Minus)).isApprox(gates::identity()));
    EXPECT_TRUE((b.to_computational() * v0).isApprox(kets::zero()));
    EXPECT_TRUE(gates::is_unitary(b.to_computational()));
  }
  // Outcome 0 is the +1 eigenvalue.
  EXPECT_TRUE((gates::pauli_x() * MeasurementBasis::x().eigenvector(Outcome::Plus)).isApprox(kets::plus()));
  EXPECT_TRUE((gates::pauli_y() * kets::minus_i()).isApprox(-kets::minus_i()));
  EXPECT_EQ(MeasurementBasis::y().label(), 'Y');
}

TEST(StateVector, RejectsBadInput) {
  EXPECT_THROW(StateVector(2, CVector::Zero(3)), std::invalid_argument);
  CVector v = CVector::Zero(4);
  v[0] = 2.0;
  EXPECT_THROW(StateVector(2, v), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(CVector::Zero(4)), std::invalid_argument);
  EXPECT_NO_THROW(StateVector::normalized(v));
  EXPECT_THROW(StateVector::normalized(CVector::Ones(3)), std::invalid_argument);
}

TEST(StateVector, ProductOrdersQubitZeroFirst) {
  const StateVector s = StateVector::product({kets::one(), kets::zero()});
  EXPECT_NEAR(std::abs(s[2]), 1.0, kTol);  // |10>
}

TEST(DensityMatrix, Invariants) {
  CMatrix m = CMatrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityMatrix(1, m));
  m(0, 1) = Complex(0, 0.1);
  EXPECT_THROW(DensityMatrix(1, m), std::invalid_argument);  // not Hermitian
  EXPECT_THROW(DensityMatrix(1, CMatrix::Identity(2, 2)), std::invalid_argument);  // trace 2
  CMatrix neg(2, 2);
  neg << 1.1, 0, 0, -0.1;
  const DensityMatrix unphysical(1, neg);
  EXPECT_FALSE(unphysical.is_physical());
  EXPECT_NEAR(unphysical.min_eigenvalue(), -0.1, kTol);
  EXPECT_TRUE(DensityMatrix::maximally_mixed(3).is_physical());
}

TEST(ApplyGate, MatchesDenseOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen::integer(rng, 1, 5);
    const int q = gen::integer(rng, 0, n - 1);
    const StateVector s = random_pure_state(n, rng);
    const Matrix2 u = gen::unitary(rng);
    const CVector expect = oracle::embed(n, q, u) * s.amplitudes();
    EXPECT_TRUE(apply_1q_gate(s, q, u).amplitudes().isApprox(expect, kTol));

    const DensityMatrix rho = gen::density_matrix(n, 2, rng);
    const oracle::Mat full = oracle::embed(n, q, u);
    EXPECT_TRUE(apply_1q_gate(rho, q, u).matrix().isApprox(full * rho.matrix() * full.adjoint(), kTol));
  }
}

TEST(ApplyCz, MatchesDenseOracleAndIsSymmetric) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::integer(rng, 2, 5);
    const int a = gen::integer(rng, 0, n - 1);
    int b = gen::integer(rng, 0, n - 2);
    if (b >= a) ++b;
    const StateVector s = random_pure_state(n, rng);
    EXPECT_TRUE(apply_cz(s, a, b).amplitudes().isApprox(oracle::cz(n, a, b) * s.amplitudes(), kTol));
    EXPECT_TRUE(apply_cz(s, a, b).amplitudes().isApprox(apply_cz(s, b, a).amplitudes(), kTol));
    const DensityMatrix rho(s);
    EXPECT_TRUE(apply_cz(rho, a, b).matrix().isApprox(DensityMatrix(apply_cz(s, a, b)).matrix(), kTol));
  }
  EXPECT_THROW(apply_cz(StateVector::basis_state(2, 0), 1, 1), std::invalid_argument);
}

TEST(Born, ProbabilitiesSumToOneAndAgreeAcrossRepresentations) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::integer(rng, 1, 4);
    const int q = gen::integer(rng, 0, n - 1);
    const StateVector s = random_pure_state(n, rng);
    const MeasurementBasis b = MeasurementBasis::bloch(gen::angle(rng) / 2, gen::angle(rng));
    const BranchProbabilities p = born_probabilities(s, q, b);
    const BranchProbabilities pd = born_probabilities(DensityMatrix(s), q, b);
    EXPECT_NEAR(p.p0 + p.p1, 1.0, kTol);
    EXPECT_NEAR(p.p0, pd.p0, kTol);
    const double oracle_p0 =
        oracle::joint_probability(DensityMatrix(s).matrix(), n, {{q, ket_of(b.eigenvector(Outcome::Plus))}});
    EXPECT_NEAR(p.p0, oracle_p0, kTol);
  }
}

TEST(Project, ImpossibleBranchThrows) {
  const StateVector zero = StateVector::basis_state(1, 0);
  EXPECT_THROW(project(zero, 0, MeasurementBasis::z(), Outcome::Minus), ImpossibleBranch);
  EXPECT_THROW(project(DensityMatrix(zero), 0, MeasurementBasis::z(), Outcome::Minus), ImpossibleBranch);
  const auto p = project(zero, 0, MeasurementBasis::x(), Outcome::Minus);
  EXPECT_NEAR(p.probability, 0.5, kTol);
  EXPECT_TRUE(equal_up_to_global_phase(p.state, StateVector::product({kets::minus()})));
}

TEST(Measure, KeepsQubitInRegisterAndSamplesBornRule) {
  const StateVector s = StateVector::product({kets::plus(), kets::zero()});
  Rng rng(4);
  std::array<std::uint64_t, 2> counts{};
  constexpr std::uint64_t kShots = 10000;
  for (std::uint64_t i = 0; i < kShots; ++i) {
    const auto m = measure(s, 0, MeasurementBasis::z(), rng);
    EXPECT_EQ(m.state.num_qubits(), 2);
    ++counts[static_cast<std::size_t>(bit(m.outcome))];
  }
  EXPECT_TRUE(stats::binomial_close(counts[0], kShots, 0.5));
}

TEST(JointProbabilities, MatchOracleWithFirstQubitHigh) {
  Rng rng(5);
  const StateVector s = random_pure_state(3, rng);
  const std::vector<QubitBasis> measured{{2, MeasurementBasis::x()}, {0, MeasurementBasis::y()}};
  const std::vector<double> p = joint_probabilities(s, measured);
  ASSERT_EQ(p.size(), 4u);
  const oracle::Mat rho = DensityMatrix(s).matrix();
  for (int i = 0; i < 4; ++i) {
    const Outcome o2 = outcome_from_bit(i >> 1), o0 = outcome_from_bit(i);
    const double expect = oracle::joint_probability(
        rho, 3, {{2, ket_of(MeasurementBasis::x().eigenvector(o2))}, {0, ket_of(MeasurementBasis::y().eigenvector(o0))}});
    EXPECT_NEAR(p[static_cast<std::size_t>(i)], expect, kTol);
  }
  const std::vector<double> pd = joint_probabilities(DensityMatrix(s), measured);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(p[static_cast<std::size_t>(i)], pd[static_cast<std::size_t>(i)], kTol);
}

TEST(PartialTrace, ProductStatesAndTracePreservation) {
  const StateVector s = StateVector::product({kets::zero(), kets::plus(), kets::one()});
  const std::array<int, 2> keep{2, 0};
  const DensityMatrix r = partial_trace(DensityMatrix(s), keep);
  // Kept qubits come out in ascending order: (0, 2) -> |0>|1>.
  EXPECT_NEAR(r.matrix()(1, 1).real(), 1.0, kTol);
  Rng rng(6);
  const DensityMatrix rho = gen::density_matrix(4, 3, rng);
  const std::array<int, 1> one{1};
  EXPECT_NEAR(partial_trace(rho, one).trace(), 1.0, kTol);
  EXPECT_TRUE(partial_trace(rho, one).is_physical());
}

TEST(Fidelity, PhaseInvarianceAndSymmetry) {
  Rng rng(7);
  const StateVector a = random_pure_state(3, rng), b = random_pure_state(3, rng);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), kTol);
  EXPECT_NEAR(fidelity(DensityMatrix(a), b), fidelity(a, b), kTol);
  const StateVector phased(3, std::polar(1.0, 0.3) * a.amplitudes());
  EXPECT_TRUE(equal_up_to_global_phase(a, phased));
  EXPECT_FALSE(equal_up_to_global_phase(a, b));
  EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(3), a), 0.125, kTol);
}

TEST(Tensor, MatchesKronecker) {
  Rng rng(8);
  const StateVector a = random_pure_state(1, rng), b = random_pure_state(2, rng);
  EXPECT_TRUE(tensor(a, b).amplitudes().isApprox(oracle::kron(oracle::Vec(a.amplitudes()), oracle::Vec(b.amplitudes()))));
  const DensityMatrix ra(a), rb(b);
  EXPECT_TRUE(tensor(ra, rb).matrix().isApprox(oracle::kron(oracle::Mat(ra.matrix()), oracle::Mat(rb.matrix()))));
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  EXPECT_EQ(derive_seed(1, "server"), derive_seed(1, "server"));
  EXPECT_NE(derive_seed(1, "server"), derive_seed(1, "client"));
  EXPECT_NE(derive_seed(1, "session", 0), derive_seed(1, "session", 1));
  EXPECT_NE(derive_seed(1, "server"), derive_seed(2, "server"));
  Rng a = make_stream(9, "x"), b = make_stream(9, "x");
  for (int i = 0; i < 100; ++i) {
    const double u = uniform01(a);
    EXPECT_EQ(u, uniform01(b));
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, SampleDiscreteFollowsWeights) {
  Rng rng(10);
  const std::vector<double> w{0.1, 0.0, 0.6, 0.3};
  std::array<std::uint64_t, 4> counts{};
  constexpr std::uint64_t kShots = 20000;
  for (std::uint64_t i = 0; i < kShots; ++i) ++counts[sample_discrete(w, rng)];
  EXPECT_EQ(counts[1], 0u);
  EXPECT_LT(stats::chi_square(counts, w, kShots), 16.27);  // 3 dof, p = 0.001
  EXPECT_THROW(sample_discrete(std::vector<double>{}, rng), std::invalid_argument);
  EXPECT_THROW(sample_discrete(std::vector<double>{0.5, -0.1}, rng), std::invalid_argument);
}

TEST(RandomPureState, IsNormalized) {
  Rng rng(12);
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(random_pure_state(n, rng).amplitudes().norm(), 1.0, kTol);
}

}  // namespace
}  // namespace mobqc

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

#include "dense_oracle.h"
#include "generators.h"
#include "mobqc/errors.h"
#include "mobqc/graph_states.h"
#include "mobqc/mbqc.h"
#include "stats.h"

namespace mobqc {
namespace {

constexpr double kTol = 1e-10;
const double kR = 1.0 / std::sqrt(2.0);

StateVector from(const oracle::Vec& v) { return StateVector(static_cast<int>(std::log2(v.size())), v); }

MeasurementPattern star_pattern(MeasurementBasis b2, MeasurementBasis b3) {
  return {{{1, b2}, {2, b3}}, {0, 3}};
}

TEST(Exponent, ParsePrintAndEvaluate) {
  const Exponent e = Exponent::parse("s2+s3+1");
  EXPECT_EQ(e.to_string(), "s2+s3+1");
  EXPECT_EQ(Exponent::parse(e.to_string()).to_string(), "s2+s3+1");
  const OutcomeMap o{{1, Outcome::Minus}, {2, Outcome::Plus}};
  EXPECT_EQ(e.evaluate(o), 0);
  EXPECT_EQ(Exponent::parse("s3").evaluate(o), 0);
  EXPECT_EQ(Exponent::always().evaluate({}), 1);
  EXPECT_THROW(Exponent::parse("s3").evaluate({{1, Outcome::Plus}}), std::invalid_argument);
}

TEST(Pattern, ValidationRejectsOverlapAndRange) {
  EXPECT_THROW(validate(MeasurementPattern{{{0, MeasurementBasis::x()}}, {0}}, 2), std::invalid_argument);
  EXPECT_THROW(validate(MeasurementPattern{{{2, MeasurementBasis::x()}}, {0}}, 2), std::invalid_argument);
  EXPECT_NO_THROW(validate(MeasurementPattern{{{1, MeasurementBasis::x()}}, {0}}, 2));
}

TEST(RunPattern, EmptyPatternReturnsInput) {
  Rng rng(1);
  const StateVector s = linear_cluster4();
  const PatternRun run = run_pattern(s, MeasurementPattern{{}, {0, 1, 2, 3}}, rng);
  EXPECT_TRUE(run.outcomes.empty());
  EXPECT_TRUE(equal_up_to_global_phase(run.residual, s));
}

TEST(RunPattern, RawYXResidualCarriesTheCaptionFrame) {
  // The tabulated Y2X3 row-00 state is the residual after (Z1 Z4)^{s3+1};
  // the raw residual differs from it by Z1 Z4.
  const auto run = run_pattern_postselected(star_cluster4(), star_pattern(MeasurementBasis::y(), MeasurementBasis::x()),
                                            std::array<Outcome, 2>{Outcome::Plus, Outcome::Plus});
  const oracle::Vec table = (oracle::ket("0i") + Complex(0, 1) * oracle::ket("1j")) * kR;
  const oracle::Vec raw = oracle::kron(oracle::Mat(gates::pauli_z()), oracle::Mat(gates::pauli_z())) * table;
  EXPECT_TRUE(equal_up_to_global_phase(run.residual, from(raw)));
  EXPECT_NEAR(run.probability, 0.25, kTol);
}

TEST(RunPattern, ZXOutcome10GivesPsiPlus) {
  const auto run = run_pattern_postselected(star_cluster4(), star_pattern(MeasurementBasis::z(), MeasurementBasis::x()),
                                            std::array<Outcome, 2>{Outcome::Minus, Outcome::Plus});
  EXPECT_TRUE(equal_up_to_global_phase(run.residual, from((oracle::ket("01") + oracle::ket("10")) * kR)));
}

TEST(RunPatternPostselected, Examples) {
  const auto star = run_pattern_postselected(star_cluster4(), star_pattern(MeasurementBasis::y(), MeasurementBasis::x()),
                                             std::array<Outcome, 2>{Outcome::Plus, Outcome::Plus});
  EXPECT_NEAR(star.probability, 0.25, kTol);

  EXPECT_THROW(run_pattern_postselected(StateVector::basis_state(1, 0), MeasurementPattern{{{0, MeasurementBasis::z()}}, {}},
                                        std::array<Outcome, 1>{Outcome::Minus}),
               ImpossibleBranch);

  const auto lin = run_pattern_postselected(linear_cluster4(),
                                            MeasurementPattern{{{0, MeasurementBasis::z()}, {2, MeasurementBasis::z()}}, {1, 3}},
                                            std::array<Outcome, 2>{Outcome::Plus, Outcome::Minus});
  EXPECT_NEAR(lin.probability, 0.25, kTol);
  EXPECT_TRUE(equal_up_to_global_phase(lin.residual, from(oracle::ket("--"))));
}

TEST(RunPatternPostselected, DensityMatrixAgreesWithPureState) {
  for (const GateSpec& g : gate_library()) {
    for (int i = 0; i < 4; ++i) {
      const std::array<Outcome, 2> f{outcome_from_bit(i >> 1), outcome_from_bit(i)};
      const auto sv = run_pattern_postselected(star_cluster4(), g.pattern, f);
      const auto dm = run_pattern_postselected(DensityMatrix(star_cluster4()), g.pattern, f);
      EXPECT_NEAR(sv.probability, dm.probability, kTol);
      EXPECT_NEAR(fidelity(dm.residual, sv.residual), 1.0, kTol);
    }
  }
}

TEST(ApplyByproduct, MissingOutcomeThrows) {
  const GateSpec& g = gate_by_name("Y2X3");
  EXPECT_THROW(apply_byproduct(g.frame, OutcomeMap{{1, Outcome::Plus}}, g.ideal(Outcome::Plus, Outcome::Plus)),
               std::invalid_argument);
}

TEST(ApplyByproduct, ZeroExponentIsIdentity) {
  const GateSpec& g = gate_by_name("Z2X3");
  const StateVector& s = g.ideal(Outcome::Plus, Outcome::Plus);
  const OutcomeMap o{{1, Outcome::Plus}, {2, Outcome::Plus}};
  EXPECT_TRUE(equal_up_to_global_phase(apply_byproduct(g.frame, o, s), s));
}

TEST(GateLibrary, OrderAndTabulatedRows) {
  const auto& lib = gate_library();
  ASSERT_EQ(lib.size(), 4u);
  EXPECT_EQ(lib[0].name, "Y2X3");
  EXPECT_EQ(lib[1].name, "Z2X3");
  EXPECT_EQ(lib[2].name, "Z2Y3");
  EXPECT_EQ(lib[3].name, "Y2Y3");
  const StateVector psi_plus = from((oracle::ket("01") + oracle::ket("10")) * kR);
  const StateVector phi_plus = from((oracle::ket("00") + oracle::ket("11")) * kR);
  EXPECT_TRUE(equal_up_to_global_phase(gate_by_name("Z2X3").ideal(Outcome::Minus, Outcome::Minus), psi_plus));
  EXPECT_TRUE(equal_up_to_global_phase(gate_by_name("Y2Y3").ideal(Outcome::Plus, Outcome::Minus), phi_plus));
  const StateVector y2x3_10 = from((oracle::ket("0j") - Complex(0, 1) * oracle::ket("1i")) * kR);
  EXPECT_TRUE(equal_up_to_global_phase(gate_by_name("Y2X3").ideal(Outcome::Minus, Outcome::Plus), y2x3_10));
  EXPECT_THROW(gate_by_name("X2X3"), std::invalid_argument);
}

TEST(VerifyGate, IdealResourceReproducesEveryRow) {
  for (const GateSpec& g : gate_library()) {
    double total = 0.0;
    for (const GateBranch& b : verify_gate(g, star_cluster4())) {
      EXPECT_NEAR(b.probability, 0.25, kTol) << g.name;
      EXPECT_GE(b.fidelity, 1.0 - 1e-9) << g.name;
      total += b.probability;
    }
    EXPECT_NEAR(total, 1.0, kTol);
  }
}

TEST(VerifyGate, CorrectedBranchesAgreePairwise) {
  for (const GateSpec& g : gate_library()) {
    for (const GateBranch& b : verify_gate(g, star_cluster4(), GateComparison::Canonical)) {
      EXPECT_GE(b.fidelity, 1.0 - 1e-9) << g.name;
    }
    std::vector<StateVector> corrected;
    for (int i = 0; i < 4; ++i) {
      const std::array<Outcome, 2> f{outcome_from_bit(i >> 1), outcome_from_bit(i)};
      const auto run = run_pattern_postselected(star_cluster4(), g.pattern, f);
      const OutcomeMap o = outcome_map(g.pattern, f);
      corrected.push_back(apply_byproduct(g.input_frame, o, apply_byproduct(g.frame, o, run.residual)));
    }
    for (const StateVector& a : corrected) {
      for (const StateVector& b : corrected) EXPECT_TRUE(equal_up_to_global_phase(a, b)) << g.name;
    }
  }
}

TEST(VerifyGate, MaximallyMixedGivesOneQuarter) {
  for (const GateSpec& g : gate_library()) {
    for (const GateBranch& b : verify_gate(g, DensityMatrix::maximally_mixed(4))) EXPECT_NEAR(b.fidelity, 0.25, kTol);
  }
}

TEST(VerifyGate, RawModeDiffersWhereTheFrameActs) {
  // Y2X3 applies Z1Z4 when s3 = 0, so the raw residual misses those rows.
  const auto raw = verify_gate(gate_by_name("Y2X3"), star_cluster4(), GateComparison::Raw);
  EXPECT_LT(raw[0].fidelity, 0.5);
  EXPECT_NEAR(raw[1].fidelity, 1.0, kTol);
}

TEST(RunPattern, SamplingAgreesWithPostselectedProbabilities) {
  Rng rng(5);
  // A perturbed resource so the branch probabilities are not all equal.
  const StateVector s = StateVector::normalized(star_cluster4().amplitudes() + 0.4 * random_pure_state(4, rng).amplitudes());
  for (const GateSpec& g : gate_library()) {
    std::array<double, 4> p{};
    for (int i = 0; i < 4; ++i) {
      p[static_cast<std::size_t>(i)] =
          run_pattern_postselected(s, g.pattern, std::array<Outcome, 2>{outcome_from_bit(i >> 1), outcome_from_bit(i)})
              .probability;
    }
    std::array<std::uint64_t, 4> counts{};
    constexpr std::uint64_t kTrials = 10000;
    for (std::uint64_t t = 0; t < kTrials; ++t) {
      const PatternRun run = run_pattern(s, g.pattern, rng);
      ++counts[static_cast<std::size_t>(2 * bit(run.outcomes[0]) + bit(run.outcomes[1]))];
    }
    EXPECT_LT(stats::chi_square(counts, p, kTrials), 16.27) << g.name;  // 3 dof, p = 0.001
  }
}

TEST(Correction, NamesRoundTrip) {
  for (Correction c : {Correction::X, Correction::Z, Correction::H, Correction::Hy, Correction::S, Correction::Sdg}) {
    EXPECT_EQ(correction_from_name(correction_name(c)), c);
    EXPECT_TRUE(gates::is_unitary(correction_matrix(c)));
  }
}

}  // namespace
}  // namespace mobqc

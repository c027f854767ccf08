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

// Trap tests on the four-qubit cluster resources, exact detection
// probabilities against parameterized cheating servers, and n-round
// amplification.
//
// The trap expectations are never tabulated by hand: every test conditions
// its ideal resource on the non-trap outcomes and records the (deterministic)
// trap outcomes that remain.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mobqc/state.h"

namespace mobqc {

inline constexpr int kProtocolQubits = 4;

using OutcomePair = std::array<Outcome, 2>;

/// Index 0..3 of an outcome pair, first entry as the high bit.
constexpr std::size_t pair_index(const OutcomePair& p) {
  return static_cast<std::size_t>(2 * bit(p[0]) + bit(p[1]));
}
constexpr OutcomePair pair_from_index(std::size_t i) {
  return {outcome_from_bit(static_cast<int>(i >> 1)), outcome_from_bit(static_cast<int>(i))};
}
/// "01"
std::string pair_string(const OutcomePair& p);

struct TrapTest {
  std::string name;
  std::array<MeasurementBasis, kProtocolQubits> bases;
  std::vector<int> z_qubits;
  std::vector<int> x_qubits;
  std::vector<int> non_trap_qubits;  // two, ascending
  std::vector<int> trap_qubits;      // two, ascending
  StateVector reference;
  /// Expected trap outcomes indexed by pair_index(non-trap outcomes).
  std::array<OutcomePair, 4> expected;
};

/// Builds a test whose bases are Z on `z_qubits` and X on `x_qubits`, and
/// derives `expected` by conditioning `reference`. Throws std::logic_error if
/// some conditional trap distribution is not a point mass.
TrapTest make_trap_test(std::string name, std::vector<int> z_qubits, std::vector<int> x_qubits,
                        std::vector<int> trap_qubits, StateVector reference);

/// (1,3) test: Z on 1,3 and X on 2,4, traps 2,4. (2,4) test: roles swapped.
const std::pair<TrapTest, TrapTest>& linear_tests();
/// (1,3) test: Z1 Z3, traps 2,4 in X. (2,4) test: Z2 X4, traps 1 (X) and 3 (Z).
const std::pair<TrapTest, TrapTest>& star_tests();

/// Conditional joint distribution of the two trap outcomes (indexed like
/// pair_index) given the non-trap outcomes, computed on `state`.
std::array<double, 4> conditional_trap_distribution(const StateVector& state, const TrapTest& test,
                                                    const OutcomePair& non_trap);

OutcomePair expected_trap_outcome(const TrapTest& test, const OutcomePair& non_trap);

/// Accept iff every trap matches its expectation.
bool trap_verdict(const TrapTest& test, const std::array<Outcome, kProtocolQubits>& outcomes);

/// Joint distribution of the 16 test outcomes on the protocol qubits 0..3
/// (qubit 0 is the high bit). Extra register qubits are server ancillas.
std::vector<double> test_outcome_distribution(const StateVector& state, const TrapTest& test);
std::vector<double> test_outcome_distribution(const DensityMatrix& state, const TrapTest& test);

struct TrapReportRow {
  OutcomePair non_trap;
  int trap_qubit;
  Outcome expected;
  std::uint64_t passes;
  std::uint64_t total;
  double pass_prob;  // NaN when the non-trap outcome was never observed
  double ci_low;
  double ci_high;
};

struct TrapReport {
  std::string test;
  std::uint64_t shots;  // 0 for exact reports
  std::vector<TrapReportRow> rows;  // non-trap outcome major, trap qubit minor
};

/// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.96);

TrapReport run_trap_test(const StateVector& state, const TrapTest& test, std::uint64_t shots,
                         Rng& rng);
TrapReport run_trap_test(const DensityMatrix& state, const TrapTest& test, std::uint64_t shots,
                         Rng& rng);
/// Infinite-shot limit of run_trap_test.
TrapReport exact_trap_report(const DensityMatrix& state, const TrapTest& test);

/// Probability that all traps pass, summed over the non-trap branches.
double exact_acceptance(const StateVector& state, const TrapTest& test);
double exact_acceptance(const DensityMatrix& state, const TrapTest& test);

/// The cheating-server family that passes the (1,3) test:
/// (|0+0+>|a1> + e^{i t2}|0-1->|a2> + e^{i t3}|1-0+>|a3> + e^{i t4}|1+1->|a4>)/2.
struct AdversaryParams {
  std::array<double, 3> thetas{};
  std::vector<StateVector> ancillas;  // four states on the same k <= 4 qubits

  /// Every ancilla |0...0> on `num_ancilla_qubits` qubits.
  static AdversaryParams aligned(std::array<double, 3> thetas, int num_ancilla_qubits = 1);
};

void validate(const AdversaryParams& params);
/// Protocol qubits first, ancillas last.
StateVector build_adversary_state(const AdversaryParams& params);

struct ForcedStatePoint {
  AdversaryParams params;
  double acceptance_a;
  double acceptance_b;
  double cluster_fidelity;  // reduced protocol state vs |C_lin>
};

struct ForcedStateReport {
  std::vector<ForcedStatePoint> points;
  double max_test_a_deviation = 0.0;   // max |1 - acceptance_a|
  std::size_t perfect_test_b_points = 0;
  std::size_t perfect_fidelity_points = 0;
  bool test_a_always_accepts = false;
  /// acceptance_b == 1 exactly at the points with fidelity 1 (both within tol).
  bool test_b_forces_cluster = false;
};

ForcedStateReport forced_state_check(std::span<const AdversaryParams> grid,
                                     double tol = kIterativeTol);

/// theta in {0, pi/steps, ..., pi}^3 with aligned single-qubit ancillas, then
/// `random_points` uniform thetas in [0, 2pi) with random ancillas on 1-2
/// qubits, then `compensated_points` where each ancilla carries a random phase
/// that the thetas cancel (so the state is the cluster up to global phase).
std::vector<AdversaryParams> forced_state_grid(std::uint64_t seed, int steps = 8,
                                               int random_points = 100,
                                               int compensated_points = 10);

struct TestMix {
  double test_a = 0.5;
  double test_b = 0.5;

  /// Throws ConfigError unless both are in [0, 1] and sum to 1 within 1e-9.
  void validate() const;
};

double mixed_acceptance(double pass_a, double pass_b, const TestMix& mix);
/// (mixed acceptance)^n for n independent rounds.
double amplified_acceptance_exact(double pass_a, double pass_b, const TestMix& mix, int n_rounds);
double amplified_acceptance_exact(const StateVector& state,
                                  const std::pair<TrapTest, TrapTest>& tests, const TestMix& mix,
                                  int n_rounds);

struct AcceptanceEstimate {
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;

  double rate() const { return trials ? static_cast<double>(accepted) / trials : 0.0; }
};

/// Each trial runs n rounds; a trial accepts iff every round accepts. Rounds
/// pick test A with probability mix.test_a and sample the prepared state.
AcceptanceEstimate amplified_acceptance_sampled(const StateVector& state,
                                                const std::pair<TrapTest, TrapTest>& tests,
                                                const TestMix& mix, int n_rounds,
                                                std::uint64_t trials, Rng& rng);

}  // namespace mobqc

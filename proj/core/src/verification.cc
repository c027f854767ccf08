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

#include "mobqc/verification.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mobqc/errors.h"
#include "mobqc/graph_states.h"

namespace mobqc {
namespace {

constexpr std::size_t kOutcomeCount = 1u << kProtocolQubits;

int outcome_bit(std::size_t index, int qubit) {
  return static_cast<int>((index >> (kProtocolQubits - 1 - qubit)) & 1u);
}

OutcomePair pair_at(std::size_t index, const std::vector<int>& qubits) {
  return {outcome_from_bit(outcome_bit(index, qubits[0])),
          outcome_from_bit(outcome_bit(index, qubits[1]))};
}

std::vector<QubitBasis> measured_qubits(const TrapTest& test) {
  std::vector<QubitBasis> out;
  for (int q = 0; q < kProtocolQubits; ++q) out.push_back({q, test.bases[q]});
  return out;
}

std::vector<double> clamp_distribution(std::vector<double> p) {
  for (double& x : p) x = std::max(x, 0.0);
  return p;
}

bool outcome_accepted(const TrapTest& test, std::size_t index) {
  const OutcomePair expected = test.expected[pair_index(pair_at(index, test.non_trap_qubits))];
  return pair_at(index, test.trap_qubits) == expected;
}

template <class State>
TrapReport sampled_report(const State& state, const TrapTest& test, std::uint64_t shots,
                          Rng& rng) {
  if (shots == 0) throw ConfigError("run_trap_test: shots must be positive");
  const std::vector<double> dist = test_outcome_distribution(state, test);
  std::array<std::uint64_t, 4> totals{};
  std::array<std::array<std::uint64_t, 2>, 4> passes{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t idx = sample_discrete(dist, rng);
    const std::size_t n = pair_index(pair_at(idx, test.non_trap_qubits));
    const OutcomePair traps = pair_at(idx, test.trap_qubits);
    ++totals[n];
    for (int t = 0; t < 2; ++t) {
      if (traps[t] == test.expected[n][t]) ++passes[n][t];
    }
  }
  TrapReport report{test.name, shots, {}};
  for (std::size_t n = 0; n < 4; ++n) {
    for (int t = 0; t < 2; ++t) {
      const auto [lo, hi] = wilson_interval(passes[n][t], totals[n]);
      const double p = totals[n] ? static_cast<double>(passes[n][t]) / totals[n]
                                 : std::numeric_limits<double>::quiet_NaN();
      report.rows.push_back({pair_from_index(n), test.trap_qubits[t], test.expected[n][t],
                             passes[n][t], totals[n], p, lo, hi});
    }
  }
  return report;
}

template <class State>
double acceptance_of(const State& state, const TrapTest& test) {
  const std::vector<double> dist = test_outcome_distribution(state, test);
  double acc = 0.0;
  for (std::size_t i = 0; i < kOutcomeCount; ++i) {
    if (outcome_accepted(test, i)) acc += dist[i];
  }
  return acc;
}

}  // namespace

std::string pair_string(const OutcomePair& p) {
  return {static_cast<char>('0' + bit(p[0])), static_cast<char>('0' + bit(p[1]))};
}

TrapTest make_trap_test(std::string name, std::vector<int> z_qubits, std::vector<int> x_qubits,
                        std::vector<int> trap_qubits, StateVector reference) {
  if (reference.num_qubits() < kProtocolQubits) {
    throw std::invalid_argument("make_trap_test: reference must cover the protocol qubits");
  }
  std::array<int, kProtocolQubits> assigned{};
  std::array<MeasurementBasis, kProtocolQubits> bases{
      MeasurementBasis::z(), MeasurementBasis::z(), MeasurementBasis::z(), MeasurementBasis::z()};
  for (int q : z_qubits) {
    if (q < 0 || q >= kProtocolQubits) throw std::invalid_argument("make_trap_test: bad qubit");
    ++assigned[q];
  }
  for (int q : x_qubits) {
    if (q < 0 || q >= kProtocolQubits) throw std::invalid_argument("make_trap_test: bad qubit");
    ++assigned[q];
    bases[q] = MeasurementBasis::x();
  }
  if (std::ranges::any_of(assigned, [](int c) { return c != 1; })) {
    throw std::invalid_argument("make_trap_test: every qubit needs exactly one basis");
  }
  std::ranges::sort(trap_qubits);
  if (trap_qubits.size() != 2 || trap_qubits[0] == trap_qubits[1] || trap_qubits[0] < 0 ||
      trap_qubits[1] >= kProtocolQubits) {
    throw std::invalid_argument("make_trap_test: need two distinct trap qubits");
  }
  std::vector<int> non_trap;
  for (int q = 0; q < kProtocolQubits; ++q) {
    if (!std::ranges::binary_search(trap_qubits, q)) non_trap.push_back(q);
  }
  std::ranges::sort(z_qubits);
  std::ranges::sort(x_qubits);

  TrapTest test{std::move(name), bases,        std::move(z_qubits), std::move(x_qubits),
                std::move(non_trap), std::move(trap_qubits), std::move(reference), {}};
  for (std::size_t n = 0; n < 4; ++n) {
    const std::array<double, 4> cond =
        conditional_trap_distribution(test.reference, test, pair_from_index(n));
    const auto it = std::ranges::max_element(cond);
    if (*it < 1.0 - kIterativeTol) {
      throw std::logic_error("make_trap_test: trap outcomes of " + test.name +
                             " are not determined by the non-trap outcomes");
    }
    test.expected[n] = pair_from_index(static_cast<std::size_t>(it - cond.begin()));
  }
  return test;
}

const std::pair<TrapTest, TrapTest>& linear_tests() {
  static const std::pair<TrapTest, TrapTest> tests{
      make_trap_test("TestA", {0, 2}, {1, 3}, {1, 3}, linear_cluster4()),
      make_trap_test("TestB", {1, 3}, {0, 2}, {0, 2}, linear_cluster4())};
  return tests;
}

const std::pair<TrapTest, TrapTest>& star_tests() {
  static const std::pair<TrapTest, TrapTest> tests{
      make_trap_test("StarTestA", {0, 2}, {1, 3}, {1, 3}, star_cluster4()),
      make_trap_test("StarTestB", {1, 2}, {0, 3}, {0, 2}, star_cluster4())};
  return tests;
}

std::vector<double> test_outcome_distribution(const StateVector& state, const TrapTest& test) {
  if (state.num_qubits() < kProtocolQubits) {
    throw std::invalid_argument("trap test: state has fewer than 4 qubits");
  }
  return clamp_distribution(joint_probabilities(state, measured_qubits(test)));
}

std::vector<double> test_outcome_distribution(const DensityMatrix& state, const TrapTest& test) {
  if (state.num_qubits() < kProtocolQubits) {
    throw std::invalid_argument("trap test: state has fewer than 4 qubits");
  }
  return clamp_distribution(joint_probabilities(state, measured_qubits(test)));
}

std::array<double, 4> conditional_trap_distribution(const StateVector& state,
                                                    const TrapTest& test,
                                                    const OutcomePair& non_trap) {
  const std::vector<double> dist = test_outcome_distribution(state, test);
  std::array<double, 4> cond{};
  double total = 0.0;
  for (std::size_t i = 0; i < kOutcomeCount; ++i) {
    if (pair_at(i, test.non_trap_qubits) != non_trap) continue;
    cond[pair_index(pair_at(i, test.trap_qubits))] += dist[i];
    total += dist[i];
  }
  if (total < kImpossibleBranch) {
    throw ImpossibleBranch("conditional_trap_distribution: non-trap outcome " +
                           pair_string(non_trap) + " has zero probability");
  }
  for (double& c : cond) c /= total;
  return cond;
}

OutcomePair expected_trap_outcome(const TrapTest& test, const OutcomePair& non_trap) {
  return test.expected[pair_index(non_trap)];
}

bool trap_verdict(const TrapTest& test, const std::array<Outcome, kProtocolQubits>& outcomes) {
  const OutcomePair n{outcomes[test.non_trap_qubits[0]], outcomes[test.non_trap_qubits[1]]};
  const OutcomePair t{outcomes[test.trap_qubits[0]], outcomes[test.trap_qubits[1]]};
  return t == expected_trap_outcome(test, n);
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  if (k > n) throw std::invalid_argument("wilson_interval: more successes than trials");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TrapReport run_trap_test(const StateVector& state, const TrapTest& test, std::uint64_t shots,
                         Rng& rng) {
  return sampled_report(state, test, shots, rng);
}

TrapReport run_trap_test(const DensityMatrix& state, const TrapTest& test, std::uint64_t shots,
                         Rng& rng) {
  return sampled_report(state, test, shots, rng);
}

TrapReport exact_trap_report(const DensityMatrix& state, const TrapTest& test) {
  const std::vector<double> dist = test_outcome_distribution(state, test);
  std::array<double, 4> totals{};
  std::array<std::array<double, 2>, 4> passes{};
  for (std::size_t i = 0; i < kOutcomeCount; ++i) {
    const std::size_t n = pair_index(pair_at(i, test.non_trap_qubits));
    const OutcomePair traps = pair_at(i, test.trap_qubits);
    totals[n] += dist[i];
    for (int t = 0; t < 2; ++t) {
      if (traps[t] == test.expected[n][t]) passes[n][t] += dist[i];
    }
  }
  TrapReport report{test.name, 0, {}};
  for (std::size_t n = 0; n < 4; ++n) {
    for (int t = 0; t < 2; ++t) {
      const double p = totals[n] > kImpossibleBranch ? passes[n][t] / totals[n]
                                                     : std::numeric_limits<double>::quiet_NaN();
      report.rows.push_back(
          {pair_from_index(n), test.trap_qubits[t], test.expected[n][t], 0, 0, p, p, p});
    }
  }
  return report;
}

double exact_acceptance(const StateVector& state, const TrapTest& test) {
  return acceptance_of(state, test);
}

double exact_acceptance(const DensityMatrix& state, const TrapTest& test) {
  return acceptance_of(state, test);
}

AdversaryParams AdversaryParams::aligned(std::array<double, 3> thetas, int num_ancilla_qubits) {
  AdversaryParams p{thetas, {}};
  for (int j = 0; j < 4; ++j) p.ancillas.push_back(StateVector::basis_state(num_ancilla_qubits, 0));
  return p;
}

void validate(const AdversaryParams& params) {
  if (params.ancillas.size() != 4) {
    throw ConfigError("adversary: exactly four ancilla states are required");
  }
  const int k = params.ancillas.front().num_qubits();
  if (k < 1 || k > 4) throw ConfigError("adversary: ancilla width must be in [1, 4]");
  for (const StateVector& a : params.ancillas) {
    if (a.num_qubits() != k) throw ConfigError("adversary: ancillas must share one width");
  }
  for (double t : params.thetas) {
    if (!std::isfinite(t)) throw ConfigError("adversary: theta must be finite");
  }
}

StateVector build_adversary_state(const AdversaryParams& params) {
  validate(params);
  using namespace kets;
  const std::array<std::array<Ket2, 4>, 4> branches{{{zero(), plus(), zero(), plus()},
                                                     {zero(), minus(), one(), minus()},
                                                     {one(), minus(), zero(), plus()},
                                                     {one(), plus(), one(), minus()}}};
  const int k = params.ancillas.front().num_qubits();
  CVector amps = CVector::Zero(Eigen::Index{1} << (kProtocolQubits + k));
  for (std::size_t j = 0; j < 4; ++j) {
    const double theta = j == 0 ? 0.0 : params.thetas[j - 1];
    const StateVector branch =
        tensor(StateVector::product(std::span<const Ket2>(branches[j])), params.ancillas[j]);
    amps += 0.5 * std::polar(1.0, theta) * branch.amplitudes();
  }
  return StateVector(kProtocolQubits + k, std::move(amps));
}

ForcedStateReport forced_state_check(std::span<const AdversaryParams> grid, double tol) {
  const auto [test_a, test_b] = linear_tests();
  const StateVector cluster = linear_cluster4();
  const std::array<int, kProtocolQubits> protocol{0, 1, 2, 3};
  ForcedStateReport report;
  report.test_a_always_accepts = true;
  report.test_b_forces_cluster = true;
  for (const AdversaryParams& params : grid) {
    const StateVector state = build_adversary_state(params);
    ForcedStatePoint point{params, exact_acceptance(state, test_a), exact_acceptance(state, test_b),
                           fidelity(reduced_density_matrix(state, protocol), cluster)};
    const double dev_a = std::abs(1.0 - point.acceptance_a);
    report.max_test_a_deviation = std::max(report.max_test_a_deviation, dev_a);
    const bool perfect_b = std::abs(1.0 - point.acceptance_b) <= tol;
    const bool perfect_f = std::abs(1.0 - point.cluster_fidelity) <= tol;
    report.perfect_test_b_points += perfect_b;
    report.perfect_fidelity_points += perfect_f;
    if (dev_a > tol) report.test_a_always_accepts = false;
    if (perfect_b != perfect_f) report.test_b_forces_cluster = false;
    report.points.push_back(std::move(point));
  }
  return report;
}

std::vector<AdversaryParams> forced_state_grid(std::uint64_t seed, int steps, int random_points,
                                               int compensated_points) {
  if (steps < 1 || random_points < 0 || compensated_points < 0) {
    throw std::invalid_argument("forced_state_grid: bad grid size");
  }
  const double pi = std::numbers::pi;
  std::vector<AdversaryParams> grid;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      for (int c = 0; c <= steps; ++c) {
        grid.push_back(AdversaryParams::aligned(
            {pi * a / steps, pi * b / steps, pi * c / steps}));
      }
    }
  }
  Rng rng = make_stream(seed, "forced_state_grid");
  for (int i = 0; i < random_points; ++i) {
    AdversaryParams p;
    for (double& t : p.thetas) t = 2.0 * pi * uniform01(rng);
    const int k = uniform01(rng) < 0.5 ? 1 : 2;
    for (int j = 0; j < 4; ++j) p.ancillas.push_back(random_pure_state(k, rng));
    grid.push_back(std::move(p));
  }
  for (int i = 0; i < compensated_points; ++i) {
    const int k = uniform01(rng) < 0.5 ? 1 : 2;
    const StateVector base = random_pure_state(k, rng);
    std::array<double, 4> phases{};
    for (double& ph : phases) ph = 2.0 * pi * uniform01(rng);
    AdversaryParams p;
    for (int j = 0; j < 4; ++j) {
      p.ancillas.emplace_back(k, std::polar(1.0, phases[j]) * base.amplitudes());
    }
    for (int j = 1; j < 4; ++j) p.thetas[j - 1] = std::fmod(phases[0] - phases[j] + 2.0 * pi, 2.0 * pi);
    grid.push_back(std::move(p));
  }
  return grid;
}

void TestMix::validate() const {
  if (!(test_a >= 0.0 && test_a <= 1.0 && test_b >= 0.0 && test_b <= 1.0) ||
      std::abs(test_a + test_b - 1.0) > 1e-9) {
    throw ConfigError("test mix must be a probability distribution over the two tests");
  }
}

double mixed_acceptance(double pass_a, double pass_b, const TestMix& mix) {
  mix.validate();
  return mix.test_a * pass_a + mix.test_b * pass_b;
}

double amplified_acceptance_exact(double pass_a, double pass_b, const TestMix& mix, int n_rounds) {
  if (n_rounds < 1) throw ConfigError("amplification needs at least one round");
  return std::pow(mixed_acceptance(pass_a, pass_b, mix), n_rounds);
}

double amplified_acceptance_exact(const StateVector& state,
                                  const std::pair<TrapTest, TrapTest>& tests, const TestMix& mix,
                                  int n_rounds) {
  return amplified_acceptance_exact(exact_acceptance(state, tests.first),
                                    exact_acceptance(state, tests.second), mix, n_rounds);
}

AcceptanceEstimate amplified_acceptance_sampled(const StateVector& state,
                                                const std::pair<TrapTest, TrapTest>& tests,
                                                const TestMix& mix, int n_rounds,
                                                std::uint64_t trials, Rng& rng) {
  mix.validate();
  if (n_rounds < 1) throw ConfigError("amplification needs at least one round");
  const std::vector<double> dist_a = test_outcome_distribution(state, tests.first);
  const std::vector<double> dist_b = test_outcome_distribution(state, tests.second);
  AcceptanceEstimate est{0, trials};
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool accepted = true;
    for (int r = 0; r < n_rounds && accepted; ++r) {
      const bool use_a = uniform01(rng) < mix.test_a;
      const TrapTest& test = use_a ? tests.first : tests.second;
      accepted = outcome_accepted(test, sample_discrete(use_a ? dist_a : dist_b, rng));
    }
    est.accepted += accepted;
  }
  return est;
}

}  // namespace mobqc

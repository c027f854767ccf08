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

#include "mobqc/mbqc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mobqc/errors.h"

namespace mobqc {
namespace {

std::size_t bit_weight(int qubit, int n) { return std::size_t{1} << (n - 1 - qubit); }

void check_forced(const MeasurementPattern& pattern, std::span<const Outcome> forced) {
  if (forced.size() != pattern.steps.size()) {
    throw std::invalid_argument("run_pattern_postselected: one forced outcome per step required");
  }
}

// Pure residual of a state whose measured qubits were projected onto the
// given eigenstates.
StateVector extract_residual(const StateVector& projected, const MeasurementPattern& pattern,
                             std::span<const Outcome> outcomes) {
  const int n = projected.num_qubits();
  if (pattern.steps.size() + pattern.output_qubits.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(
        "pattern does not cover the register; use the density-matrix overload");
  }
  StateVector rotated = projected;
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < pattern.steps.size(); ++i) {
    const MeasurementStep& step = pattern.steps[i];
    rotated = apply_1q_gate(std::move(rotated), step.qubit, step.basis.to_computational());
    if (outcomes[i] == Outcome::Minus) fixed |= bit_weight(step.qubit, n);
  }
  const std::size_t m = pattern.output_qubits.size();
  CVector out(Eigen::Index{1} << m);
  for (std::size_t r = 0; r < (std::size_t{1} << m); ++r) {
    std::size_t full = fixed;
    for (std::size_t k = 0; k < m; ++k) {
      if ((r >> (m - 1 - k)) & 1u) full |= bit_weight(pattern.output_qubits[k], n);
    }
    out[static_cast<Eigen::Index>(r)] = rotated[full];
  }
  return StateVector::normalized(std::move(out));
}

// Reorders a density matrix over ascending qubits into `order`.
DensityMatrix reorder(const DensityMatrix& ascending, const std::vector<int>& order) {
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted == order) return ascending;
  const int m = static_cast<int>(order.size());
  std::vector<int> pos(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    pos[static_cast<std::size_t>(k)] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), order[static_cast<std::size_t>(k)]) -
        sorted.begin());
  }
  auto old_index = [&](std::size_t idx) {
    std::size_t o = 0;
    for (int k = 0; k < m; ++k) {
      if ((idx >> (m - 1 - k)) & 1u) o |= std::size_t{1} << (m - 1 - pos[static_cast<std::size_t>(k)]);
    }
    return o;
  };
  const auto d = static_cast<Eigen::Index>(ascending.dim());
  CMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = ascending.matrix()(static_cast<Eigen::Index>(old_index(static_cast<std::size_t>(i))),
                                     static_cast<Eigen::Index>(old_index(static_cast<std::size_t>(j))));
    }
  }
  return DensityMatrix(m, std::move(out));
}

int output_position(const ByproductFrame& frame, int qubit) {
  auto it = std::find(frame.output_qubits.begin(), frame.output_qubits.end(), qubit);
  if (it == frame.output_qubits.end()) {
    throw std::invalid_argument("byproduct term acts on a qubit outside the frame's outputs");
  }
  return static_cast<int>(it - frame.output_qubits.begin());
}

template <class State>
State apply_frame(const ByproductFrame& frame, const OutcomeMap& outcomes, State residual) {
  if (residual.num_qubits() != static_cast<int>(frame.output_qubits.size())) {
    throw std::invalid_argument("apply_byproduct: residual size != frame output count");
  }
  for (auto it = frame.terms.rbegin(); it != frame.terms.rend(); ++it) {
    if (it->exponent.evaluate(outcomes) == 0) continue;
    residual = apply_1q_gate(std::move(residual), output_position(frame, it->qubit),
                             correction_matrix(it->correction));
  }
  return residual;
}

StateVector ket2(const Ket2& a, const Ket2& b) { return StateVector::product({a, b}); }

StateVector sum2(const StateVector& a, Complex ca, const StateVector& b, Complex cb) {
  return StateVector::normalized(ca * a.amplitudes() + cb * b.amplitudes());
}

ByproductTerm term(int qubit, Correction c, Exponent e) { return {qubit, c, std::move(e)}; }

std::vector<GateSpec> build_library() {
  using namespace kets;
  // Register indices: qubit label k is index k-1.
  constexpr int q1 = 0, q2 = 1, q3 = 2, q4 = 3;
  const std::vector<int> outputs = {q1, q4};
  const Exponent s2{0, {q2}}, s3{0, {q3}}, s3_plus_1{1, {q3}}, s2_s3_plus_1{1, {q2, q3}};

  const StateVector phi_plus = sum2(ket2(zero(), zero()), 1.0, ket2(one(), one()), 1.0);
  const StateVector psi_plus = sum2(ket2(zero(), one()), 1.0, ket2(one(), zero()), 1.0);
  const Complex i(0.0, 1.0);
  const StateVector cnot_plus_plus_i = sum2(ket2(zero(), plus_i()), 1.0, ket2(one(), minus_i()), i);
  const StateVector cnot_plus_minus_i =
      sum2(ket2(zero(), minus_i()), 1.0, ket2(one(), plus_i()), -i);
  const std::string phi_label = "(|00>+|11>)/sqrt2";
  const std::string psi_label = "(|01>+|10>)/sqrt2";

  auto pattern = [&](MeasurementBasis b2, MeasurementBasis b3) {
    return MeasurementPattern{{{q2, b2}, {q3, b3}}, outputs};
  };
  auto rows = [](const StateVector& s2_zero, const StateVector& s2_one) {
    return std::vector<StateVector>{s2_zero, s2_zero, s2_one, s2_one};
  };
  auto labels = [](const std::string& a, const std::string& b) {
    return std::vector<std::string>{a, a, b, b};
  };

  std::vector<GateSpec> lib;
  lib.push_back(GateSpec{
      "Y2X3",
      "CNOT on |+,+i> (s2=0) and |+,-i> (s2=1)",
      star_cluster4_graph(),
      pattern(MeasurementBasis::y(), MeasurementBasis::x()),
      {outputs, {term(q1, Correction::Z, s3_plus_1), term(q4, Correction::Z, s3_plus_1)}},
      {outputs, {term(q1, Correction::Z, s2), term(q4, Correction::Z, s2)}},
      rows(cnot_plus_plus_i, cnot_plus_minus_i),
      labels("(|0+i>+i|1-i>)/sqrt2", "(|0-i>-i|1+i>)/sqrt2"),
  });
  lib.push_back(GateSpec{
      "Z2X3",
      "CNOT on |+0> (s2=0) and |+1> (s2=1)",
      star_cluster4_graph(),
      pattern(MeasurementBasis::z(), MeasurementBasis::x()),
      {outputs, {term(q4, Correction::X, s3)}},
      {outputs, {term(q4, Correction::X, s2)}},
      rows(phi_plus, psi_plus),
      labels(phi_label, psi_label),
  });
  // (H1 H4)(Z4)^s2 (X4)^(s2+s3+1) as an operator product yields
  // CPhase(pi/2).CNOT.CPhase(pi/2) exactly, i.e. (|00>+i|11>)/sqrt2 for s2=0;
  // the tabulated states drop that local phase, hence the leading Sdg on 1.
  lib.push_back(GateSpec{
      "Z2Y3",
      "CPhase(pi/2).CNOT.CPhase(pi/2) on |+0> (s2=0) and |+1> (s2=1)",
      star_cluster4_graph(),
      pattern(MeasurementBasis::z(), MeasurementBasis::y()),
      {outputs,
       {term(q1, Correction::Sdg, Exponent::always()), term(q1, Correction::H, Exponent::always()),
        term(q4, Correction::H, Exponent::always()), term(q4, Correction::Z, s2),
        term(q4, Correction::X, s2_s3_plus_1)}},
      {outputs, {term(q4, Correction::X, s2)}},
      rows(phi_plus, psi_plus),
      labels(phi_label, psi_label),
  });
  // The tabulated rows require (X4)^s3 under our outcome convention.
  lib.push_back(GateSpec{
      "Y2Y3",
      "CNOT.(I x Hy) on |+,+i> (s2=0) and |+,-i> (s2=1)",
      star_cluster4_graph(),
      pattern(MeasurementBasis::y(), MeasurementBasis::y()),
      {outputs, {term(q4, Correction::X, s3)}},
      {outputs, {term(q4, Correction::X, s2)}},
      rows(phi_plus, psi_plus),
      labels(phi_label, psi_label),
  });
  return lib;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const MeasurementPattern& pattern, int num_qubits) {
  std::vector<bool> used(static_cast<std::size_t>(std::max(num_qubits, 0)), false);
  auto claim = [&](int q) {
    if (q < 0 || q >= num_qubits) throw std::invalid_argument("pattern qubit out of range");
    if (used[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument("pattern uses a qubit twice (measured/output overlap)");
    }
    used[static_cast<std::size_t>(q)] = true;
  };
  for (const MeasurementStep& s : pattern.steps) claim(s.qubit);
  for (int q : pattern.output_qubits) claim(q);
}

Matrix2 correction_matrix(Correction c) {
  switch (c) {
    case Correction::X:
      return gates::pauli_x();
    case Correction::Z:
      return gates::pauli_z();
    case Correction::H:
      return gates::hadamard();
    case Correction::Hy:
      return gates::hadamard_y();
    case Correction::S:
      return gates::phase_s();
    case Correction::Sdg:
      return gates::phase_sdg();
  }
  throw std::invalid_argument("correction_matrix: bad correction");
}

std::string_view correction_name(Correction c) {
  switch (c) {
    case Correction::X:
      return "X";
    case Correction::Z:
      return "Z";
    case Correction::H:
      return "H";
    case Correction::Hy:
      return "Hy";
    case Correction::S:
      return "S";
    case Correction::Sdg:
      return "Sdg";
  }
  return "?";
}

Correction correction_from_name(std::string_view name) {
  for (Correction c : {Correction::X, Correction::Z, Correction::H, Correction::Hy, Correction::S,
                       Correction::Sdg}) {
    if (correction_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown correction: " + std::string(name));
}

int Exponent::evaluate(const OutcomeMap& outcomes) const {
  int e = constant;
  for (int q : outcome_qubits) {
    auto it = outcomes.find(q);
    if (it == outcomes.end()) {
      throw std::invalid_argument("byproduct exponent needs the outcome of qubit " +
                                  std::to_string(q + 1));
    }
    e += bit(it->second);
  }
  return e & 1;
}

std::string Exponent::to_string() const {
  std::string s;
  for (int q : outcome_qubits) {
    if (!s.empty()) s += "+";
    s += "s" + std::to_string(q + 1);
  }
  if (constant & 1) s += s.empty() ? "1" : "+1";
  return s.empty() ? "0" : s;
}

Exponent Exponent::parse(std::string_view text) {
  Exponent e;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::string_view tok =
        text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    if (tok == "1") {
      e.constant ^= 1;
    } else if (tok == "0") {
    } else if (tok.size() >= 2 && tok[0] == 's') {
      int label = 0;
      for (char c : tok.substr(1)) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad exponent term");
        label = label * 10 + (c - '0');
      }
      if (label < 1) throw std::invalid_argument("bad exponent qubit label");
      e.outcome_qubits.push_back(label - 1);
    } else {
      throw std::invalid_argument("bad exponent: " + std::string(text));
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return e;
}

OutcomeMap outcome_map(const MeasurementPattern& pattern, std::span<const Outcome> outcomes) {
  if (outcomes.size() != pattern.steps.size()) {
    throw std::invalid_argument("outcome_map: one outcome per step required");
  }
  OutcomeMap m;
  for (std::size_t i = 0; i < outcomes.size(); ++i) m[pattern.steps[i].qubit] = outcomes[i];
  return m;
}

PatternRun run_pattern(const StateVector& state, const MeasurementPattern& pattern, Rng& rng) {
  validate(pattern, state.num_qubits());
  StateVector current = state;
  std::vector<Outcome> outcomes;
  for (const MeasurementStep& step : pattern.steps) {
    Measured<StateVector> m = measure(current, step.qubit, step.basis, rng);
    outcomes.push_back(m.outcome);
    current = std::move(m.state);
  }
  StateVector residual = extract_residual(current, pattern, outcomes);
  OutcomeMap by_qubit = outcome_map(pattern, outcomes);
  return {std::move(outcomes), std::move(by_qubit), std::move(residual)};
}

PostselectedRun<StateVector> run_pattern_postselected(const StateVector& state,
                                                      const MeasurementPattern& pattern,
                                                      std::span<const Outcome> forced) {
  validate(pattern, state.num_qubits());
  check_forced(pattern, forced);
  StateVector current = state;
  double probability = 1.0;
  for (std::size_t i = 0; i < pattern.steps.size(); ++i) {
    Projected<StateVector> p =
        project(current, pattern.steps[i].qubit, pattern.steps[i].basis, forced[i]);
    probability *= p.probability;
    current = std::move(p.state);
  }
  if (probability < kImpossibleBranch) throw ImpossibleBranch("postselected branch is impossible");
  return {probability, extract_residual(current, pattern, forced)};
}

PostselectedRun<DensityMatrix> run_pattern_postselected(const DensityMatrix& state,
                                                        const MeasurementPattern& pattern,
                                                        std::span<const Outcome> forced) {
  validate(pattern, state.num_qubits());
  check_forced(pattern, forced);
  if (pattern.output_qubits.empty()) throw std::invalid_argument("pattern has no output qubits");
  DensityMatrix current = state;
  double probability = 1.0;
  for (std::size_t i = 0; i < pattern.steps.size(); ++i) {
    Projected<DensityMatrix> p =
        project(current, pattern.steps[i].qubit, pattern.steps[i].basis, forced[i]);
    probability *= p.probability;
    current = std::move(p.state);
  }
  if (probability < kImpossibleBranch) throw ImpossibleBranch("postselected branch is impossible");
  DensityMatrix reduced = partial_trace(current, pattern.output_qubits);
  return {probability, reorder(reduced, pattern.output_qubits)};
}

StateVector apply_byproduct(const ByproductFrame& frame, const OutcomeMap& outcomes,
                            const StateVector& residual) {
  return apply_frame(frame, outcomes, residual);
}

DensityMatrix apply_byproduct(const ByproductFrame& frame, const OutcomeMap& outcomes,
                              const DensityMatrix& residual) {
  return apply_frame(frame, outcomes, residual);
}

const std::vector<GateSpec>& gate_library() {
  static const std::vector<GateSpec> lib = build_library();
  return lib;
}

const GateSpec& gate_by_name(std::string_view name) {
  for (const GateSpec& g : gate_library()) {
    if (g.name == name) return g;
  }
  throw std::invalid_argument("unknown gate: " + std::string(name));
}

const StateVector& canonical_output(const GateSpec& spec) { return spec.ideal_outputs.front(); }

namespace {
template <class State>
std::array<GateBranch, 4> verify_impl(const GateSpec& spec, const State& state,
                                      GateComparison mode) {
  if (state.num_qubits() != spec.resource.num_vertices) {
    throw std::invalid_argument("verify_gate: state is not on the gate's resource register");
  }
  std::array<GateBranch, 4> out{};
  for (int idx = 0; idx < 4; ++idx) {
    const Outcome s2 = outcome_from_bit(idx >> 1), s3 = outcome_from_bit(idx);
    const std::array<Outcome, 2> forced = {s2, s3};
    GateBranch& b = out[static_cast<std::size_t>(idx)];
    b.s2 = s2;
    b.s3 = s3;
    try {
      auto run = run_pattern_postselected(state, spec.pattern, forced);
      const OutcomeMap outcomes = outcome_map(spec.pattern, forced);
      b.probability = run.probability;
      switch (mode) {
        case GateComparison::Raw:
          b.fidelity = fidelity(run.residual, spec.ideal(s2, s3));
          break;
        case GateComparison::PerRow:
          b.fidelity = fidelity(apply_byproduct(spec.frame, outcomes, run.residual), spec.ideal(s2, s3));
          break;
        case GateComparison::Canonical:
          b.fidelity = fidelity(
              apply_byproduct(spec.input_frame, outcomes,
                              apply_byproduct(spec.frame, outcomes, run.residual)),
              canonical_output(spec));
          break;
      }
    } catch (const ImpossibleBranch&) {
      b.probability = 0.0;
      b.fidelity = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}
}  // namespace

std::array<GateBranch, 4> verify_gate(const GateSpec& spec, const StateVector& state,
                                      GateComparison mode) {
  return verify_impl(spec, state, mode);
}

std::array<GateBranch, 4> verify_gate(const GateSpec& spec, const DensityMatrix& state,
                                      GateComparison mode) {
  return verify_impl(spec, state, mode);
}

}  // namespace mobqc

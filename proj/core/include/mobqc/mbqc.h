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

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mobqc/graph_states.h"
#include "mobqc/state.h"

namespace mobqc {

struct MeasurementStep {
  int qubit;
  MeasurementBasis basis;
};

/// Ordered single-qubit measurements plus the qubits left unmeasured as the
/// logical output (residual order = output_qubits order).
struct MeasurementPattern {
  std::vector<MeasurementStep> steps;
  std::vector<int> output_qubits;
};

/// Throws std::invalid_argument if a qubit is out of range, measured twice,
/// or both measured and an output.
void validate(const MeasurementPattern& pattern, int num_qubits);

/// Outcome of each measured register qubit.
using OutcomeMap = std::map<int, Outcome>;

enum class Correction : std::uint8_t { X, Z, H, Hy, S, Sdg };

Matrix2 correction_matrix(Correction c);
std::string_view correction_name(Correction c);
Correction correction_from_name(std::string_view name);

/// (constant + sum of the listed outcome bits) mod 2.
struct Exponent {
  int constant = 0;
  std::vector<int> outcome_qubits;

  /// Throws std::invalid_argument when an outcome is missing.
  int evaluate(const OutcomeMap& outcomes) const;
  /// "s2+s3+1" with 1-based qubit labels; "0" or "1" when unconditional.
  std::string to_string() const;
  static Exponent parse(std::string_view text);

  static Exponent always() { return {1, {}}; }
};

struct ByproductTerm {
  int qubit;  // register index; must be one of the frame's output qubits
  Correction correction;
  Exponent exponent;
};

/// Operator product T_0 T_1 ... T_m as written, so T_m acts on the residual
/// first. Unconditional gates are terms with Exponent::always().
struct ByproductFrame {
  std::vector<int> output_qubits;
  std::vector<ByproductTerm> terms;
};

struct PatternRun {
  std::vector<Outcome> outcomes;  // in step order
  OutcomeMap by_qubit;
  StateVector residual;  // over the output qubits
};

/// Samples every step in order. The register must consist of exactly the
/// measured and output qubits so the residual is pure.
PatternRun run_pattern(const StateVector& state, const MeasurementPattern& pattern, Rng& rng);

template <class State>
struct PostselectedRun {
  double probability;
  State residual;
};

/// Forces the given outcomes; probability is the product of the conditional
/// Born probabilities. Throws ImpossibleBranch below kImpossibleBranch.
PostselectedRun<StateVector> run_pattern_postselected(const StateVector& state,
                                                      const MeasurementPattern& pattern,
                                                      std::span<const Outcome> forced);
/// Density-matrix version. Unlisted register qubits are traced out.
PostselectedRun<DensityMatrix> run_pattern_postselected(const DensityMatrix& state,
                                                        const MeasurementPattern& pattern,
                                                        std::span<const Outcome> forced);

OutcomeMap outcome_map(const MeasurementPattern& pattern, std::span<const Outcome> outcomes);

StateVector apply_byproduct(const ByproductFrame& frame, const OutcomeMap& outcomes,
                            const StateVector& residual);
DensityMatrix apply_byproduct(const ByproductFrame& frame, const OutcomeMap& outcomes,
                              const DensityMatrix& residual);

/// A two-qubit entangling gate driven by measuring qubits 2 and 3 of the star
/// cluster.
///
/// The tabulated output for a branch is the residual after `frame`. The s2
/// outcome also selects which of two logical inputs the gate acted on, so rows
/// with different s2 list different states; `input_frame` is the s2-controlled
/// Pauli that maps the s2 = 1 output onto the s2 = 0 one. After both frames,
/// every branch equals canonical_output().
struct GateSpec {
  std::string name;
  std::string logical_gate;
  GraphSpec resource;
  MeasurementPattern pattern;
  ByproductFrame frame;
  ByproductFrame input_frame;
  std::vector<StateVector> ideal_outputs;  // index 2*s2 + s3
  std::vector<std::string> ideal_labels;

  const StateVector& ideal(Outcome s2, Outcome s3) const {
    return ideal_outputs[static_cast<std::size_t>(2 * bit(s2) + bit(s3))];
  }
};

/// Y2X3, Z2X3, Z2Y3, Y2Y3 in that order.
const std::vector<GateSpec>& gate_library();
/// Throws std::invalid_argument for an unknown name.
const GateSpec& gate_by_name(std::string_view name);

/// The s-independent logical output: ideal row 00.
const StateVector& canonical_output(const GateSpec& spec);

enum class GateComparison : std::uint8_t {
  PerRow,     // frame-corrected residual vs the tabulated row state
  Raw,        // uncorrected residual vs the tabulated row state
  Canonical,  // frame + input_frame vs canonical_output()
};

struct GateBranch {
  Outcome s2;
  Outcome s3;
  double probability;
  double fidelity;  // NaN for an impossible branch
};

std::array<GateBranch, 4> verify_gate(const GateSpec& spec, const StateVector& state,
                                      GateComparison mode = GateComparison::PerRow);
std::array<GateBranch, 4> verify_gate(const GateSpec& spec, const DensityMatrix& state,
                                      GateComparison mode = GateComparison::PerRow);

}  // namespace mobqc

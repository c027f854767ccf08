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

// JSON and CSV forms of the library's data. Qubit labels are 1-based in every
// serialized form; Outcome values are written as bits.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "mobqc/graph_states.h"
#include "mobqc/mbqc.h"
#include "mobqc/noise.h"
#include "mobqc/protocol.h"
#include "mobqc/tomography.h"
#include "mobqc/verification.h"

namespace mobqc {

using Json = nlohmann::ordered_json;

/// Rejects any key of `object` outside `allowed`; `where` names the object
/// in the error message. Throws ConfigError.
void require_known_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                        std::string_view where);

// {"n": 4, "edges": [[1, 2], ...]}
Json graph_to_json(const GraphSpec& graph);
GraphSpec graph_from_json(const Json& j);

Json state_to_json(const StateVector& state);  // [[re, im], ...]
StateVector state_from_json(const Json& j, int num_qubits);

Json gate_to_json(const GateSpec& gate);

// {"depolarizing": [p1..p4], "dephasing": [g1..g4]}; a missing array means
// zeros.
Json noise_to_json(const NoiseConfig& noise);
NoiseConfig noise_from_json(const Json& j, int num_qubits = 4);

// {"thetas": [t2, t3, t4], "ancillas": [a1, a2, a3, a4]}. Each ancilla is a
// product label over "01+-" (one character per qubit) or an amplitude list.
// Missing ancillas mean "0" for all four.
Json adversary_to_json(const AdversaryParams& params);
AdversaryParams adversary_from_json(const Json& j);

// {"program", "seed", "outcomes", "verdict", ...}
Json session_to_json(const SessionResult& result, std::uint64_t seed);
Json batch_to_json(const BatchReport& report, bool include_sessions);

std::string format_number(double x);

// test,non_trap_outcome,trap_qubit,pass_prob,ci_low,ci_high
void write_trap_report_csv(std::ostream& out, const TrapReport& report, bool header = true);
// setting_string,outcome_index,count
void write_counts_csv(std::ostream& out, const CountRecord& counts);
/// Throws ConfigError on malformed rows.
CountRecord read_counts_csv(std::istream& in);
// 2^n rows of 2^n comma-separated values
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace mobqc

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

#include "mobqc/serialization.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mobqc/errors.h"

namespace mobqc {
namespace {

template <class T>
T get_as(const Json& j, std::string_view what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(fmt::format("{}: wrong type", what));
  }
}

std::vector<double> number_array(const Json& j, std::string_view what) {
  if (!j.is_array()) throw ConfigError(fmt::format("{}: expected an array", what));
  std::vector<double> out;
  for (const Json& x : j) {
    if (!x.is_number()) throw ConfigError(fmt::format("{}: expected numbers", what));
    out.push_back(x.get<double>());
  }
  return out;
}

StateVector ancilla_from_json(const Json& j, std::size_t index) {
  const std::string what = fmt::format("adversary ancilla {}", index + 1);
  if (j.is_string()) {
    const auto label = j.get<std::string>();
    if (label.empty() || label.size() > 4) {
      throw ConfigError(what + ": label must have 1 to 4 characters");
    }
    std::vector<Ket2> kets;
    for (char c : label) {
      switch (c) {
        case '0': kets.push_back(kets::zero()); break;
        case '1': kets.push_back(kets::one()); break;
        case '+': kets.push_back(kets::plus()); break;
        case '-': kets.push_back(kets::minus()); break;
        default: throw ConfigError(what + ": label characters must be 0, 1, + or -");
      }
    }
    return StateVector::product(kets);
  }
  if (j.is_array()) {
    int n = 0;
    while ((std::size_t{1} << n) < j.size()) ++n;
    if (n < 1 || n > 4 || (std::size_t{1} << n) != j.size()) {
      throw ConfigError(what + ": amplitude count must be 2, 4, 8 or 16");
    }
    return state_from_json(j, n);
  }
  throw ConfigError(what + ": expected a label or an amplitude list");
}

}  // namespace

void require_known_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                        std::string_view where) {
  if (!object.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(fmt::format("{}: unknown key '{}'", where, item.key()));
    }
  }
}

Json graph_to_json(const GraphSpec& graph) {
  Json edges = Json::array();
  for (auto [u, v] : graph.edges) edges.push_back({u + 1, v + 1});
  return {{"n", graph.num_vertices}, {"edges", edges}};
}

GraphSpec graph_from_json(const Json& j) {
  require_known_keys(j, {"n", "edges"}, "graph");
  if (!j.contains("n") || !j.contains("edges")) throw ConfigError("graph: needs 'n' and 'edges'");
  GraphSpec g{get_as<int>(j.at("n"), "graph.n"), {}};
  if (!j.at("edges").is_array()) throw ConfigError("graph.edges: expected an array");
  for (const Json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ConfigError("graph.edges: each edge is a pair of vertex labels");
    }
    g.edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
  }
  try {
    validate(g);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  return g;
}

Json state_to_json(const StateVector& state) {
  Json out = Json::array();
  for (std::size_t i = 0; i < state.dim(); ++i) out.push_back({state[i].real(), state[i].imag()});
  return out;
}

StateVector state_from_json(const Json& j, int num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (!j.is_array() || j.size() != dim) {
    throw ConfigError(fmt::format("state: expected {} amplitudes", dim));
  }
  CVector amps(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::vector<double> z = number_array(j[i], "state amplitude");
    if (z.size() != 2) throw ConfigError("state amplitude: expected [re, im]");
    amps[static_cast<Eigen::Index>(i)] = Complex(z[0], z[1]);
  }
  try {
    return StateVector::normalized(std::move(amps));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
}

Json gate_to_json(const GateSpec& gate) {
  Json steps = Json::array();
  for (const MeasurementStep& s : gate.pattern.steps) {
    steps.push_back({{"qubit", s.qubit + 1}, {"basis", std::string(1, s.basis.label())}});
  }
  Json outputs = Json::array();
  for (int q : gate.pattern.output_qubits) outputs.push_back(q + 1);
  auto frame_json = [](const ByproductFrame& frame) {
    Json terms = Json::array();
    for (const ByproductTerm& t : frame.terms) {
      terms.push_back({{"qubit", t.qubit + 1},
                       {"correction", std::string(correction_name(t.correction))},
                       {"exponent", t.exponent.to_string()}});
    }
    return terms;
  };
  Json rows = Json::array();
  for (std::size_t i = 0; i < gate.ideal_outputs.size(); ++i) {
    rows.push_back({{"s2", i >> 1},
                    {"s3", i & 1},
                    {"label", gate.ideal_labels[i]},
                    {"amplitudes", state_to_json(gate.ideal_outputs[i])}});
  }
  return {{"name", gate.name},
          {"logical_gate", gate.logical_gate},
          {"resource", graph_to_json(gate.resource)},
          {"pattern", {{"steps", steps}, {"output_qubits", outputs}}},
          {"frame", frame_json(gate.frame)},
          {"input_frame", frame_json(gate.input_frame)},
          {"ideal_outputs", rows}};
}

Json noise_to_json(const NoiseConfig& noise) {
  return {{"depolarizing", noise.depolarizing}, {"dephasing", noise.dephasing}};
}

NoiseConfig noise_from_json(const Json& j, int num_qubits) {
  require_known_keys(j, {"depolarizing", "dephasing"}, "noise");
  NoiseConfig cfg = NoiseConfig::none(num_qubits);
  if (j.contains("depolarizing")) cfg.depolarizing = number_array(j.at("depolarizing"), "noise.depolarizing");
  if (j.contains("dephasing")) cfg.dephasing = number_array(j.at("dephasing"), "noise.dephasing");
  cfg.validate(num_qubits);
  return cfg;
}

Json adversary_to_json(const AdversaryParams& params) {
  Json ancillas = Json::array();
  for (const StateVector& a : params.ancillas) ancillas.push_back(state_to_json(a));
  return {{"thetas", params.thetas}, {"ancillas", ancillas}};
}

AdversaryParams adversary_from_json(const Json& j) {
  require_known_keys(j, {"thetas", "ancillas"}, "adversary");
  AdversaryParams params = AdversaryParams::aligned({0.0, 0.0, 0.0});
  if (j.contains("thetas")) {
    const std::vector<double> t = number_array(j.at("thetas"), "adversary.thetas");
    if (t.size() != 3) throw ConfigError("adversary.thetas: expected [theta2, theta3, theta4]");
    std::copy(t.begin(), t.end(), params.thetas.begin());
  }
  if (j.contains("ancillas")) {
    const Json& a = j.at("ancillas");
    if (!a.is_array() || a.size() != 4) throw ConfigError("adversary.ancillas: expected four entries");
    params.ancillas.clear();
    for (std::size_t i = 0; i < 4; ++i) params.ancillas.push_back(ancilla_from_json(a[i], i));
  }
  validate(params);
  return params;
}

Json session_to_json(const SessionResult& result, std::uint64_t seed) {
  Json outcomes = Json::array();
  for (const std::optional<Outcome>& o : result.outcomes) {
    if (o) {
      outcomes.push_back(bit(*o));
    } else {
      outcomes.push_back(nullptr);
    }
  }
  Json j{{"program", result.program.name()},
         {"seed", seed},
         {"outcomes", outcomes},
         {"verdict", std::string(verdict_name(result.verdict))}};
  if (result.output_fidelity) j["output_fidelity"] = *result.output_fidelity;
  return j;
}

Json batch_to_json(const BatchReport& report, bool include_sessions) {
  const double rate = report.acceptance_rate();
  Json j{{"seed", report.seed},
         {"resource", std::string(resource_name(report.resource))},
         {"gate", report.gate},
         {"mix", {{"test_a", report.mix.test_a}, {"test_b", report.mix.test_b}, {"compute", report.mix.compute}}},
         {"sessions", report.sessions},
         {"test_a_sessions", report.test_a_sessions},
         {"test_b_sessions", report.test_b_sessions},
         {"computation_sessions", report.computation_sessions},
         {"accepted", report.accepted},
         {"aborted", report.aborted},
         {"acceptance_rate", std::isnan(rate) ? Json(nullptr) : Json(rate)}};
  if (include_sessions) {
    Json logs = Json::array();
    for (std::size_t i = 0; i < report.results.size(); ++i) {
      logs.push_back(session_to_json(report.results[i], report.session_seeds[i]));
    }
    j["session_logs"] = logs;
  }
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // no "-0"
  return fmt::format("{:.12g}", x);
}

void write_trap_report_csv(std::ostream& out, const TrapReport& report, bool header) {
  if (header) out << "test,non_trap_outcome,trap_qubit,pass_prob,ci_low,ci_high\n";
  for (const TrapReportRow& row : report.rows) {
    out << report.test << ',' << pair_string(row.non_trap) << ',' << row.trap_qubit + 1 << ','
        << format_number(row.pass_prob) << ',' << format_number(row.ci_low) << ','
        << format_number(row.ci_high) << '\n';
  }
}

void write_counts_csv(std::ostream& out, const CountRecord& counts) {
  out << "setting_string,outcome_index,count\n";
  for (const SettingCounts& sc : counts.settings) {
    for (std::size_t o = 0; o < kTomographyOutcomes; ++o) {
      out << sc.setting.to_string() << ',' << o << ',' << sc.counts[o] << '\n';
    }
  }
}

CountRecord read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "setting_string,outcome_index,count") {
    throw ConfigError("counts CSV: missing header 'setting_string,outcome_index,count'");
  }
  CountRecord record;
  std::map<std::string, std::size_t> index;
  std::set<std::pair<std::string, std::size_t>> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string setting, outcome_text, count_text, extra;
    if (!std::getline(row, setting, ',') || !std::getline(row, outcome_text, ',') ||
        !std::getline(row, count_text, ',') || std::getline(row, extra, ',')) {
      throw ConfigError(fmt::format("counts CSV line {}: expected three fields", line_no));
    }
    std::size_t outcome = 0;
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      outcome = std::stoul(outcome_text, &used);
      if (used != outcome_text.size()) throw std::invalid_argument("trailing");
      count = std::stoull(count_text, &used);
      if (used != count_text.size() || count_text.front() == '-') throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("counts CSV line {}: bad number", line_no));
    }
    if (outcome >= kTomographyOutcomes) {
      throw ConfigError(fmt::format("counts CSV line {}: outcome index out of range", line_no));
    }
    const TomographySetting parsed = TomographySetting::parse(setting);
    if (!seen.emplace(setting, outcome).second) {
      throw ConfigError(fmt::format("counts CSV line {}: duplicate row", line_no));
    }
    auto [it, inserted] = index.emplace(setting, record.settings.size());
    if (inserted) record.settings.push_back({parsed, {}});
    record.settings[it->second].counts[outcome] = count;
  }
  return record;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_number(m(r, c));
    }
    out << '\n';
  }
}

}  // namespace mobqc

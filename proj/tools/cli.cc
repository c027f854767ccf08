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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mobqc/errors.h"
#include "mobqc/graph_states.h"
#include "mobqc/mbqc.h"
#include "mobqc/noise.h"
#include "mobqc/protocol.h"
#include "mobqc/serialization.h"
#include "mobqc/tomography.h"
#include "mobqc/verification.h"
#include "run_config.h"

namespace mobqc::cli {
namespace {

constexpr std::uint64_t kDefaultShots = 10000;

// Doubles in JSON outputs are cut to 12 significant digits so that golden
// files do not depend on last-bit rounding.
Json rounded(double x) {
  if (std::isnan(x)) return nullptr;
  return std::stod(format_number(x));
}

class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw ConfigError("cannot write '" + *path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
}

std::unique_ptr<ServerStrategy> make_server(const RunConfig& c, Resource resource) {
  if (c.adversary) {
    return std::make_unique<AdversarialServer>(adversary_from_json(read_json_file(*c.adversary)));
  }
  if (c.noise) return std::make_unique<NoisyHonestServer>(resource, resolve_noise(c, resource));
  return std::make_unique<HonestServer>(resource);
}

int cmd_gates(const RunConfig& c, std::ostream& out) {
  if (c.resource && *c.resource != Resource::Star) {
    throw ConfigError("gates run on the star resource");
  }
  const DensityMatrix noisy = apply_noise(DensityMatrix(star_cluster4()), resolve_noise(c, Resource::Star));
  const std::string noisy_label = c.noise.value_or("calibrated") == "calibrated" ? "calibrated" : "configured";

  std::ostringstream csv;
  csv << "condition,gate,s2,s3,ideal_state_label,fidelity\n";
  auto emit = [&](const std::string& condition, const GateSpec& gate,
                  const std::array<GateBranch, 4>& branches) {
    for (const GateBranch& b : branches) {
      const std::size_t row = static_cast<std::size_t>(2 * bit(b.s2) + bit(b.s3));
      csv << condition << ',' << gate.name << ',' << bit(b.s2) << ',' << bit(b.s3) << ",\""
          << gate.ideal_labels[row] << "\"," << format_number(b.fidelity) << '\n';
    }
  };
  for (const GateSpec& gate : gate_library()) emit("noiseless", gate, verify_gate(gate, star_cluster4()));
  for (const GateSpec& gate : gate_library()) emit(noisy_label, gate, verify_gate(gate, noisy));

  Sink sink(c.out, out);
  *sink << csv.str();
  if (c.gates_json) {
    Json all = Json::array();
    for (const GateSpec& gate : gate_library()) all.push_back(gate_to_json(gate));
    write_text_file(*c.gates_json, all.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Resource resource = c.resource.value_or(Resource::Linear);
  const auto& [test_a, test_b] = resource_tests(resource);
  std::vector<const TrapTest*> tests;
  if (c.test != "b") tests.push_back(&test_a);
  if (c.test != "a") tests.push_back(&test_b);

  std::optional<StateVector> pure;
  std::optional<DensityMatrix> mixed;
  if (c.adversary) {
    pure = build_adversary_state(adversary_from_json(read_json_file(*c.adversary)));
  } else if (c.noise) {
    mixed = apply_noise(DensityMatrix(resource_state(resource)), resolve_noise(c, resource));
  } else {
    pure = resource_state(resource);
  }

  const std::uint64_t shots = c.shots.value_or(kDefaultShots);
  Rng sampler = make_stream(c.seed, "sampler");
  std::ostringstream csv;
  bool header = true;
  for (const TrapTest* test : tests) {
    const TrapReport report = shots == 0 ? exact_trap_report(pure ? DensityMatrix(*pure) : *mixed, *test)
                              : pure      ? run_trap_test(*pure, *test, shots, sampler)
                                          : run_trap_test(*mixed, *test, shots, sampler);
    write_trap_report_csv(csv, report, header);
    header = false;
  }
  Sink sink(c.out, out);
  *sink << csv.str();
  return kExitOk;
}

int cmd_tomography(const RunConfig& c, std::ostream& out) {
  const Resource resource = c.resource.value_or(Resource::Star);
  const StateVector target = resource_state(resource);
  std::optional<NoiseConfig> noise;
  if (c.noise) noise = resolve_noise(c, resource);
  const DensityMatrix state =
      noise ? apply_noise(DensityMatrix(target), *noise) : DensityMatrix(target);

  LocalUnitaryOptions options;
  options.restarts = c.restarts;
  options.seed = c.seed;

  std::optional<CountRecord> counts;
  std::string source;
  const QstReport report = [&] {
    if (c.counts) {
      std::ifstream in(*c.counts);
      if (!in) throw ConfigError("cannot open '" + *c.counts + "'");
      source = "counts";
      return reconstruct(read_counts_csv(in), target, options);
    }
    if (c.exact) {
      source = "exact";
      return end_to_end_qst_exact(state, target, options);
    }
    Rng sampler = make_stream(c.seed, "sampler");
    counts = simulate_counts(state, c.shots.value_or(kDefaultShots), sampler);
    source = "sampled";
    return reconstruct(*counts, target, options);
  }();

  Json angles = Json::array();
  for (double a : report.local.angles) angles.push_back(rounded(a));
  Json summary{{"resource", std::string(resource_name(resource))},
               {"source", source},
               {"shots_per_setting", source == "sampled" ? Json(c.shots.value_or(kDefaultShots)) : Json(nullptr)},
               {"seed", c.seed},
               {"restarts", c.restarts},
               {"noise", noise ? noise_to_json(*noise) : Json(nullptr)},
               {"fidelity", rounded(report.fidelity)},
               {"fidelity_local_unitary", rounded(report.local.fidelity)},
               {"local_unitary_angles", angles},
               {"optimizer_evaluations", report.local.evaluations},
               {"raw_min_eigenvalue", rounded(report.reconstruction.diagnostics.raw_min_eigenvalue)},
               {"negativity_removed", rounded(report.reconstruction.diagnostics.negativity_removed)},
               {"eigenvalues_zeroed", report.reconstruction.diagnostics.eigenvalues_zeroed}};

  if (!c.out) {
    out << summary.dump(2) << '\n';
    return kExitOk;
  }
  const std::filesystem::path dir(*c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create '" + dir.string() + "'");
  const CMatrix& rho = report.reconstruction.physical.matrix();
  std::ostringstream re, im, cnt;
  write_matrix_csv(re, rho.real());
  write_matrix_csv(im, rho.imag());
  write_text_file(dir / "rho_real.csv", re.str());
  write_text_file(dir / "rho_imag.csv", im.str());
  if (counts) {
    write_counts_csv(cnt, *counts);
    write_text_file(dir / "counts.csv", cnt.str());
  }
  write_text_file(dir / "fidelity.json", summary.dump(2) + "\n");
  return kExitOk;
}

Json server_view_json(const Transcript& t) {
  Json view = Json::array();
  for (const QubitSent& e : t.server_view) view.push_back({{"event", "QubitSent"}, {"position", e.position + 1}});
  return view;
}

int cmd_session(const RunConfig& c, std::ostream& out) {
  const Resource resource = c.resource.value_or(Resource::Linear);
  const auto server = make_server(c, resource);
  const ClientProgram program = ClientProgram::parse(c.program);
  const Session session = run_session(*server, program, c.seed);
  const std::vector<ClientProgram> programs = ClientProgram::all();
  const NoSignalingReport ns = no_signaling_check(*server, programs, c.seed);

  Json log = session_to_json(session.result, c.seed);
  if (log.contains("output_fidelity")) log["output_fidelity"] = rounded(*session.result.output_fidelity);
  log["resource"] = std::string(resource_name(resource));
  log["server"] = server->name();
  log["server_view"] = server_view_json(session.transcript);
  log["blindness_check"] = blindness_check(*server, programs, c.seed);
  log["no_signaling"] = {{"holds", ns.holds},
                         {"ancilla_qubits", ns.num_ancilla_qubits},
                         {"max_deviation", rounded(ns.max_deviation)}};
  Sink sink(c.out, out);
  *sink << log.dump(2) << '\n';
  return kExitOk;
}

int cmd_batch(const RunConfig& c, std::ostream& out) {
  const Resource resource = c.resource.value_or(Resource::Linear);
  const auto server = make_server(c, resource);
  const BatchReport report = run_batch(*server, c.mix, c.sessions, c.seed, resource, c.gate);
  Json j = batch_to_json(report, c.logs);
  j["acceptance_rate"] = rounded(report.acceptance_rate());
  if (j.contains("session_logs")) {
    for (Json& log : j["session_logs"]) {
      if (log.contains("output_fidelity")) log["output_fidelity"] = rounded(log["output_fidelity"].get<double>());
    }
  }
  j["server"] = server->name();
  const std::vector<ClientProgram> programs = ClientProgram::all();
  j["blindness_check"] = blindness_check(*server, programs, c.seed);
  Sink sink(c.out, out);
  *sink << j.dump(2) << '\n';
  return kExitOk;
}

struct Flags {
  std::string config, out, resource, noise, test, adversary, program, gate, counts, gates_json;
  std::uint64_t seed = 0, shots = 0, sessions = 0;
  int restarts = 0;
  std::vector<double> mix;
  double target_fidelity = 0.0;
  bool exact = false, no_logs = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for measurement-only blind quantum computation with trap verification"};
  app.name("mobqc");
  app.require_subcommand(1);
  Flags f;
  std::vector<std::pair<CLI::App*, std::vector<CLI::Option*>>> subs;

  auto common = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", f.config, "RunConfig JSON file");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--out", f.out, "output path");
    sub->add_option("--resource", f.resource, "cluster resource")->check(CLI::IsMember({"linear", "star"}));
    sub->add_option("--noise", f.noise, "NoiseConfig JSON path or 'calibrated'");
    sub->add_option("--target-fidelity", f.target_fidelity, "calibration target for 'calibrated' noise");
    return sub;
  };

  CLI::App* gates = common("gates", "fidelities of the four gate patterns, noiseless and noisy");
  gates->add_option("--gates-json", f.gates_json, "also write the gate specifications as JSON");
  gates->add_option("--shots", f.shots, "unused; accepted for uniformity");

  CLI::App* verify = common("verify", "trap-test pass probabilities");
  verify->add_option("--test", f.test, "a, b or both")->check(CLI::IsMember({"a", "b", "both"}));
  verify->add_option("--adversary", f.adversary, "AdversaryParams JSON path");
  verify->add_option("--shots", f.shots, "shots per test; 0 for exact probabilities");

  CLI::App* tomo = common("tomography", "simulated over-complete Pauli tomography");
  tomo->add_option("--shots", f.shots, "shots per setting");
  tomo->add_option("--restarts", f.restarts, "optimizer restarts");
  tomo->add_option("--counts", f.counts, "reconstruct from a counts CSV");
  tomo->add_flag("--exact", f.exact, "use exact probabilities");

  CLI::App* session = common("session", "one client-server session");
  session->add_option("--program", f.program, "TestA, TestB, StarTestA, StarTestB or Computation:<gate>");
  session->add_option("--adversary", f.adversary, "AdversaryParams JSON path");
  session->add_option("--shots", f.shots, "unused; accepted for uniformity");

  CLI::App* batch = common("batch", "many sessions with randomly drawn programs");
  batch->add_option("--sessions", f.sessions, "number of sessions");
  batch->add_option("--mix", f.mix, "test_a test_b compute probabilities")->expected(3);
  batch->add_option("--gate", f.gate, "gate for computation sessions");
  batch->add_option("--adversary", f.adversary, "AdversaryParams JSON path");
  batch->add_flag("--no-logs", f.no_logs, "omit per-session logs");
  batch->add_option("--shots", f.shots, "unused; accepted for uniformity");

  std::vector<std::string> argv_storage{"mobqc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [sub](const char* flag) { return sub->count(flag) > 0; };
  try {
    RunConfig c;
    c.subcommand = sub->get_name();
    if (given("--config")) load_config_file(c, f.config);
    if (given("--seed")) c.seed = f.seed;
    if (given("--out")) c.out = f.out;
    if (given("--resource")) c.resource = parse_resource(f.resource);
    if (given("--noise")) c.noise = f.noise;
    if (given("--shots")) c.shots = f.shots;
    if (given("--target-fidelity")) c.target_fidelity = f.target_fidelity;
    if (sub->get_option_no_throw("--test") && given("--test")) c.test = f.test;
    if (sub->get_option_no_throw("--adversary") && given("--adversary")) c.adversary = f.adversary;
    if (sub->get_option_no_throw("--program") && given("--program")) c.program = f.program;
    if (sub->get_option_no_throw("--restarts") && given("--restarts")) c.restarts = f.restarts;
    if (sub->get_option_no_throw("--counts") && given("--counts")) c.counts = f.counts;
    if (sub->get_option_no_throw("--exact") && given("--exact")) c.exact = true;
    if (sub->get_option_no_throw("--sessions") && given("--sessions")) c.sessions = f.sessions;
    if (sub->get_option_no_throw("--mix") && given("--mix")) c.mix = {f.mix[0], f.mix[1], f.mix[2]};
    if (sub->get_option_no_throw("--gate") && given("--gate")) c.gate = f.gate;
    if (sub->get_option_no_throw("--no-logs") && given("--no-logs")) c.logs = false;
    if (sub->get_option_no_throw("--gates-json") && given("--gates-json")) c.gates_json = f.gates_json;
    validate(c);

    if (sub == gates) return cmd_gates(c, out);
    if (sub == verify) return cmd_verify(c, out);
    if (sub == tomo) return cmd_tomography(c, out);
    if (sub == session) return cmd_session(c, out);
    return cmd_batch(c, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ImpossibleBranch& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace mobqc::cli

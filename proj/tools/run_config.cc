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

#include "run_config.h"

#include <fstream>

#include "mobqc/errors.h"
#include "mobqc/graph_states.h"

namespace mobqc::cli {
namespace {

std::string string_field(const Json& j, const char* key) {
  if (!j.at(key).is_string()) throw ConfigError(std::string("config.") + key + ": expected a string");
  return j.at(key).get<std::string>();
}

std::uint64_t count_field(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("config.") + key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool bool_field(const Json& j, const char* key) {
  if (!j.at(key).is_boolean()) throw ConfigError(std::string("config.") + key + ": expected true or false");
  return j.at(key).get<bool>();
}

double probability_field(const Json& j, const char* key) {
  if (!j.at(key).is_number()) throw ConfigError(std::string("config.mix.") + key + ": expected a number");
  return j.at(key).get<double>();
}

std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? p : (base / path).string();
}

}  // namespace

void apply_config_json(RunConfig& c, const Json& j, const std::filesystem::path& base_dir) {
  require_known_keys(j,
                     {"subcommand", "resource", "noise", "shots", "seed", "out", "mix", "test",
                      "adversary", "program", "sessions", "gate", "restarts", "exact", "counts",
                      "logs", "gates_json", "target_fidelity"},
                     "config");
  if (j.contains("subcommand")) {
    const std::string sub = string_field(j, "subcommand");
    if (!c.subcommand.empty() && sub != c.subcommand) {
      throw ConfigError("config is for subcommand '" + sub + "', not '" + c.subcommand + "'");
    }
  }
  if (j.contains("resource")) c.resource = parse_resource(string_field(j, "resource"));
  if (j.contains("noise")) {
    const std::string n = string_field(j, "noise");
    c.noise = n == "calibrated" ? n : resolve_path(n, base_dir);
  }
  if (j.contains("shots")) c.shots = count_field(j, "shots");
  if (j.contains("seed")) c.seed = count_field(j, "seed");
  if (j.contains("out")) c.out = resolve_path(string_field(j, "out"), base_dir);
  if (j.contains("mix")) {
    const Json& m = j.at("mix");
    require_known_keys(m, {"test_a", "test_b", "compute"}, "config.mix");
    c.mix = {0.0, 0.0, 0.0};
    if (m.contains("test_a")) c.mix.test_a = probability_field(m, "test_a");
    if (m.contains("test_b")) c.mix.test_b = probability_field(m, "test_b");
    if (m.contains("compute")) c.mix.compute = probability_field(m, "compute");
  }
  if (j.contains("test")) c.test = string_field(j, "test");
  if (j.contains("adversary")) c.adversary = resolve_path(string_field(j, "adversary"), base_dir);
  if (j.contains("program")) c.program = string_field(j, "program");
  if (j.contains("sessions")) c.sessions = count_field(j, "sessions");
  if (j.contains("gate")) c.gate = string_field(j, "gate");
  if (j.contains("restarts")) {
    const std::uint64_t r = count_field(j, "restarts");
    if (r > 10000) throw ConfigError("config.restarts: too large");
    c.restarts = static_cast<int>(r);
  }
  if (j.contains("exact")) c.exact = bool_field(j, "exact");
  if (j.contains("counts")) c.counts = resolve_path(string_field(j, "counts"), base_dir);
  if (j.contains("logs")) c.logs = bool_field(j, "logs");
  if (j.contains("gates_json")) c.gates_json = resolve_path(string_field(j, "gates_json"), base_dir);
  if (j.contains("target_fidelity")) {
    if (!j.at("target_fidelity").is_number()) throw ConfigError("config.target_fidelity: expected a number");
    c.target_fidelity = j.at("target_fidelity").get<double>();
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  apply_config_json(config, read_json_file(path), path.parent_path());
}

void validate(const RunConfig& c) {
  if (c.test != "a" && c.test != "b" && c.test != "both") {
    throw ConfigError("test must be 'a', 'b' or 'both'");
  }
  c.mix.validate();
  ClientProgram::parse(c.program);
  try {
    gate_by_name(c.gate);
  } catch (const std::invalid_argument&) {
    throw ConfigError("unknown gate '" + c.gate + "'");
  }
  if (c.target_fidelity && (c.noise.value_or("calibrated") != "calibrated" ||
                            (!c.noise && c.subcommand != "gates"))) {
    throw ConfigError("target_fidelity only applies to calibrated noise");
  }
  if (c.restarts < 1) throw ConfigError("restarts must be positive");
  if (c.shots && *c.shots == 0 && c.subcommand != "verify") {
    throw ConfigError("shots must be positive");
  }
  if (c.adversary && c.noise && c.subcommand != "gates" && c.subcommand != "tomography") {
    throw ConfigError("adversary and noise are mutually exclusive");
  }
}

double reference_fidelity(Resource resource) {
  return resource == Resource::Star ? 0.731 : 0.676;
}

NoiseConfig resolve_noise(const RunConfig& config, Resource resource) {
  const std::string noise = config.noise.value_or("calibrated");
  if (noise == "calibrated") {
    const double target = config.target_fidelity.value_or(reference_fidelity(resource));
    return calibrate(target, resource_state(resource)).config;
  }
  return noise_from_json(read_json_file(noise), 4);
}

}  // namespace mobqc::cli

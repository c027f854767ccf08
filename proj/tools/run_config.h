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

// Run configuration shared by every subcommand. Values come from an optional
// JSON file and are then overridden by command-line flags.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "mobqc/protocol.h"
#include "mobqc/serialization.h"

namespace mobqc::cli {

struct RunConfig {
  std::string subcommand;
  std::optional<Resource> resource;
  /// Path to a NoiseConfig JSON file, or "calibrated" for uniform
  /// depolarizing fitted to the reference fidelity of the resource.
  std::optional<std::string> noise;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  SessionMix mix;
  std::string test = "both";
  std::optional<std::string> adversary;  // path to AdversaryParams JSON
  std::string program = "TestA";
  std::uint64_t sessions = 1000;
  std::string gate = "Y2X3";
  int restarts = 20;
  bool exact = false;
  std::optional<std::string> counts;  // tomography input CSV
  bool logs = true;
  std::optional<std::string> gates_json;
  /// Overrides reference_fidelity() for "calibrated" noise.
  std::optional<double> target_fidelity;
};

/// Fills `config` from a JSON object; unknown keys and wrong types throw
/// ConfigError. Relative paths are resolved against `base_dir`.
void apply_config_json(RunConfig& config, const Json& j, const std::filesystem::path& base_dir);
void load_config_file(RunConfig& config, const std::filesystem::path& path);
/// Cross-field checks after all sources are merged.
void validate(const RunConfig& config);

Json read_json_file(const std::filesystem::path& path);

/// Fidelity targets used for "calibrated" noise.
double reference_fidelity(Resource resource);
NoiseConfig resolve_noise(const RunConfig& config, Resource resource);

}  // namespace mobqc::cli

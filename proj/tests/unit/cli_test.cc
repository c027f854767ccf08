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

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.h"
#include "golden_cases.h"

namespace mobqc::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kGolden = MOBQC_GOLDEN_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string input(const std::string& name) { return (kGolden / "inputs" / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_golden(const std::string& name, const std::string& actual) {
  const fs::path path = kGolden / name;
  if (std::getenv("MOBQC_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << "missing golden file " << path << "; rerun with MOBQC_UPDATE_GOLDEN=1";
  EXPECT_EQ(actual, slurp(path)) << name;
}

class Golden : public ::testing::TestWithParam<golden::Case> {};

TEST_P(Golden, MatchesAndIsDeterministic) {
  const golden::Case& c = GetParam();
  const CliRun first = run(c.args);
  ASSERT_EQ(first.code, 0) << first.err;
  const CliRun second = run(c.args);
  EXPECT_EQ(first.out, second.out);
  expect_golden(c.name, first.out);
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(golden::cases(kGolden)),
                         [](const ::testing::TestParamInfo<golden::Case>& info) {
                           std::string n = info.param.name;
                           for (char& ch : n) {
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           }
                           return n;
                         });

TEST(CliExit, Codes) {
  EXPECT_EQ(run({"verify", "--shots", "0"}).code, kExitOk);
  EXPECT_EQ(run({"gates", "--noise", input("no_such_file.json")}).code, kExitConfig);
  EXPECT_EQ(run({"batch", "--mix", "0.5", "0.3", "0.1"}).code, kExitConfig);
  EXPECT_EQ(run({"verify", "--config", input("unknown_key.json")}).code, kExitConfig);
  EXPECT_EQ(run({"gates", "--target-fidelity", "0.01"}).code, kExitNumerical);
  EXPECT_EQ(run({"verify", "--resource", "triangle"}).code, kExitConfig);
  EXPECT_EQ(run({"session", "--program", "TestC"}).code, kExitConfig);
  EXPECT_EQ(run({"nonsense"}).code, kExitConfig);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(CliExit, ErrorsGoToStderr) {
  const CliRun r = run({"batch", "--mix", "0.5", "0.3", "0.1"});
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST(CliSession, LogIsBlindAndNonSignaling) {
  const nlohmann::json j = nlohmann::json::parse(run({"session", "--seed", "3"}).out);
  EXPECT_EQ(j.at("verdict"), "accept");
  EXPECT_EQ(j.at("blindness_check"), true);
  EXPECT_EQ(j.at("server_view").size(), 4u);
  EXPECT_EQ(j.at("server_view")[0].at("position"), 1);
}

TEST(CliBatch, AdversaryRateInLog) {
  const nlohmann::json j = nlohmann::json::parse(
      run({"batch", "--sessions", "2000", "--adversary", input("adversary_pi.json"), "--no-logs"}).out);
  EXPECT_FALSE(j.contains("session_logs"));
  const double rate = j.at("acceptance_rate");
  EXPECT_NEAR(rate, 0.625, 0.05);
}

TEST(CliTomography, WritesOutputDirectory) {
  const fs::path dir = fs::temp_directory_path() / "mobqc_cli_tomo";
  fs::remove_all(dir);
  const CliRun r = run({"tomography", "--shots", "200", "--restarts", "1", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"rho_real.csv", "rho_imag.csv", "counts.csv", "fidelity.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  // The written counts reconstruct to the same fidelity.
  const CliRun again = run({"tomography", "--counts", (dir / "counts.csv").string(), "--restarts", "1"});
  ASSERT_EQ(again.code, 0) << again.err;
  const nlohmann::json a = nlohmann::json::parse(slurp(dir / "fidelity.json"));
  const nlohmann::json b = nlohmann::json::parse(again.out);
  EXPECT_EQ(a.at("fidelity"), b.at("fidelity"));
  fs::remove_all(dir);
}

TEST(CliGates, WritesGateSpecifications) {
  const fs::path path = fs::temp_directory_path() / "mobqc_gates.json";
  const CliRun r = run({"gates", "--gates-json", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(j.size(), 4u);
  fs::remove(path);
}

}  // namespace
}  // namespace mobqc::cli

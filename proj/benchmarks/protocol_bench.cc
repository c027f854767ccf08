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

#include <benchmark/benchmark.h>

#include <numbers>

#include "mobqc/protocol.h"

namespace mobqc {
namespace {

void BM_HonestSession(benchmark::State& state) {
  const HonestServer server(Resource::Linear);
  const ClientProgram program = ClientProgram::test(ProgramKind::TestB);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_session(server, program, seed++));
}
BENCHMARK(BM_HonestSession);

void BM_NoisySession(benchmark::State& state) {
  const NoisyHonestServer server(Resource::Star, NoiseConfig::uniform_depolarizing(4, 0.1));
  const ClientProgram program = ClientProgram::computation("Y2X3");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_session(server, program, seed++));
}
BENCHMARK(BM_NoisySession);

void BM_Batch(benchmark::State& state) {
  const AdversarialServer server(AdversaryParams::aligned({std::numbers::pi, 0, 0}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_batch(server, SessionMix{}, static_cast<std::uint64_t>(state.range(0)), 1,
                                       Resource::Linear));
  }
}
BENCHMARK(BM_Batch)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ForcedStateGrid(benchmark::State& state) {
  const std::vector<AdversaryParams> grid = forced_state_grid(1);
  for (auto _ : state) benchmark::DoNotOptimize(forced_state_check(grid));
}
BENCHMARK(BM_ForcedStateGrid)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mobqc

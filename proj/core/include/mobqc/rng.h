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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace mobqc {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
/// Unlike std::uniform_real_distribution this is identical on every stdlib.
double uniform01(Rng& rng);

/// Seed for the named substream `name`/`index` of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index = 0);

inline Rng make_stream(std::uint64_t master, std::string_view name, std::uint64_t index = 0) {
  return Rng(derive_seed(master, name, index));
}

/// Inverse-CDF draw from a discrete distribution. Weights need not be
/// normalized but must be nonnegative with a positive sum.
std::size_t sample_discrete(std::span<const double> weights, Rng& rng);

}  // namespace mobqc

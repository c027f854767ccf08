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

// Over-complete local-Pauli tomography of four-qubit states: forward
// simulation of counts, linear inversion, projection onto physical states and
// fidelity maximized over local unitaries.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mobqc/optimize.h"
#include "mobqc/pauli.h"
#include "mobqc/state.h"

namespace mobqc {

inline constexpr int kTomographyQubits = 4;
inline constexpr std::size_t kTomographyOutcomes = 16;

struct TomographySetting {
  std::array<Pauli, kTomographyQubits> bases{};

  /// "ZXZX"
  std::string to_string() const;
  /// Throws ConfigError unless four characters from XYZ.
  static TomographySetting parse(std::string_view text);

  friend bool operator==(const TomographySetting&, const TomographySetting&) = default;
};

/// The 81 settings in lexicographic X < Y < Z order, qubit 1 slowest.
const std::vector<TomographySetting>& all_settings();

struct SettingCounts {
  TomographySetting setting;
  std::array<std::uint64_t, kTomographyOutcomes> counts{};  // outcome index, qubit 1 high bit
};

struct CountRecord {
  std::vector<SettingCounts> settings;
};

struct SettingProbabilities {
  TomographySetting setting;
  std::array<double, kTomographyOutcomes> probabilities{};
};

using ProbabilityTable = std::vector<SettingProbabilities>;

/// Multinomial samples of `shots_per_setting` for every setting.
CountRecord simulate_counts(const DensityMatrix& state, std::uint64_t shots_per_setting, Rng& rng);
/// Infinite-shot limit.
ProbabilityTable exact_probabilities(const DensityMatrix& state);
/// Relative frequencies; throws ConfigError on a setting with no counts.
ProbabilityTable frequencies(const CountRecord& counts);

/// rho = (1/16) sum_P <P> P. Each <P> is the mean over every setting that
/// measures P's non-identity factors. Throws ConfigError unless every one of
/// the 81 settings appears exactly once.
CMatrix linear_inversion(const ProbabilityTable& table);
CMatrix linear_inversion(const CountRecord& counts);

struct ProjectionDiagnostics {
  double raw_min_eigenvalue = 0.0;
  double negativity_removed = 0.0;  // sum of |negative eigenvalues| of the raw matrix
  int eigenvalues_zeroed = 0;
};

/// Closest unit-trace PSD matrix in Frobenius norm: the eigenvalues are
/// projected onto the probability simplex.
DensityMatrix project_physical(const CMatrix& raw, ProjectionDiagnostics* diagnostics = nullptr);

struct LocalUnitaryOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  NelderMeadOptions simplex{};
};

struct LocalUnitaryFit {
  double fidelity = 0.0;
  std::array<Matrix2, kTomographyQubits> unitaries;
  std::vector<double> angles;  // ZYZ Euler angles, three per qubit
  int evaluations = 0;
};

/// max over U = U1 x ... x U4 of <t| U^dagger rho U |t>. Restart 0 starts at
/// the identity; the rest start at uniform random angles from the
/// "optimizer" substream of `seed`.
LocalUnitaryFit fidelity_local_unitary(const DensityMatrix& state, const StateVector& target,
                                       const LocalUnitaryOptions& options = {});

struct ReconstructionResult {
  CMatrix raw;
  DensityMatrix physical;
  ProjectionDiagnostics diagnostics;
};

struct QstReport {
  ReconstructionResult reconstruction;
  double fidelity = 0.0;
  LocalUnitaryFit local;
};

/// simulate_counts -> linear_inversion -> project_physical -> fidelities.
/// Counts come from the "sampler" substream and restarts from "optimizer".
/// Throws ConfigError when shots_per_setting is 0.
QstReport end_to_end_qst(const DensityMatrix& state, const StateVector& target,
                         std::uint64_t shots_per_setting, std::uint64_t seed,
                         const LocalUnitaryOptions& options = {});
/// Same pipeline on exact probabilities.
QstReport end_to_end_qst_exact(const DensityMatrix& state, const StateVector& target,
                               const LocalUnitaryOptions& options = {});
/// Pipeline tail for externally supplied counts.
QstReport reconstruct(const CountRecord& counts, const StateVector& target,
                      const LocalUnitaryOptions& options = {});

}  // namespace mobqc

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

#include "mobqc/tomography.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "mobqc/errors.h"

namespace mobqc {
namespace {

MeasurementBasis basis_of(Pauli p) {
  switch (p) {
    case Pauli::X: return MeasurementBasis::x();
    case Pauli::Y: return MeasurementBasis::y();
    case Pauli::Z: return MeasurementBasis::z();
    case Pauli::I: break;
  }
  throw std::invalid_argument("tomography settings measure X, Y or Z only");
}

std::array<double, kTomographyOutcomes> setting_probabilities(const DensityMatrix& state,
                                                              const TomographySetting& s) {
  std::vector<QubitBasis> measured;
  for (int q = 0; q < kTomographyQubits; ++q) measured.push_back({q, basis_of(s.bases[q])});
  const std::vector<double> p = joint_probabilities(state, measured);
  std::array<double, kTomographyOutcomes> out{};
  for (std::size_t i = 0; i < kTomographyOutcomes; ++i) out[i] = std::max(p[i], 0.0);
  return out;
}

void check_state(const DensityMatrix& state) {
  if (state.num_qubits() != kTomographyQubits) {
    throw std::invalid_argument("tomography works on four-qubit states");
  }
}

// Index into all_settings() of the setting sorted by to_string().
std::vector<const SettingProbabilities*> complete_table(const ProbabilityTable& table) {
  std::map<std::string, const SettingProbabilities*> by_name;
  for (const SettingProbabilities& sp : table) {
    if (!by_name.emplace(sp.setting.to_string(), &sp).second) {
      throw ConfigError("tomography: duplicate setting " + sp.setting.to_string());
    }
  }
  std::vector<const SettingProbabilities*> out;
  for (const TomographySetting& s : all_settings()) {
    const auto it = by_name.find(s.to_string());
    if (it == by_name.end()) throw ConfigError("tomography: missing setting " + s.to_string());
    out.push_back(it->second);
  }
  return out;
}

double unit_fidelity(const DensityMatrix& rho, const StateVector& target,
                     std::span<const double> angles) {
  StateVector rotated = target;
  for (int q = 0; q < kTomographyQubits; ++q) {
    rotated = apply_1q_gate(std::move(rotated), q,
                            gates::euler_zyz(angles[3 * q], angles[3 * q + 1], angles[3 * q + 2]));
  }
  const CVector& v = rotated.amplitudes();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

}  // namespace

std::string TomographySetting::to_string() const {
  std::string out;
  for (Pauli p : bases) out += pauli_char(p);
  return out;
}

TomographySetting TomographySetting::parse(std::string_view text) {
  if (text.size() != kTomographyQubits) {
    throw ConfigError("tomography setting must have four letters: '" + std::string(text) + "'");
  }
  TomographySetting s;
  for (int q = 0; q < kTomographyQubits; ++q) {
    const char c = text[static_cast<std::size_t>(q)];
    if (c != 'X' && c != 'Y' && c != 'Z') {
      throw ConfigError("tomography setting letters must be X, Y or Z: '" + std::string(text) + "'");
    }
    s.bases[q] = pauli_from_char(c);
  }
  return s;
}

const std::vector<TomographySetting>& all_settings() {
  static const std::vector<TomographySetting> settings = [] {
    constexpr std::array<Pauli, 3> letters{Pauli::X, Pauli::Y, Pauli::Z};
    std::vector<TomographySetting> out;
    for (int i = 0; i < 81; ++i) {
      TomographySetting s;
      int rem = i;
      for (int q = kTomographyQubits - 1; q >= 0; --q) {
        s.bases[q] = letters[static_cast<std::size_t>(rem % 3)];
        rem /= 3;
      }
      out.push_back(s);
    }
    return out;
  }();
  return settings;
}

CountRecord simulate_counts(const DensityMatrix& state, std::uint64_t shots_per_setting,
                            Rng& rng) {
  check_state(state);
  if (shots_per_setting == 0) throw ConfigError("tomography: shots must be positive");
  CountRecord record;
  for (const TomographySetting& s : all_settings()) {
    const auto p = setting_probabilities(state, s);
    SettingCounts sc{s, {}};
    for (std::uint64_t k = 0; k < shots_per_setting; ++k) ++sc.counts[sample_discrete(p, rng)];
    record.settings.push_back(sc);
  }
  return record;
}

ProbabilityTable exact_probabilities(const DensityMatrix& state) {
  check_state(state);
  ProbabilityTable table;
  for (const TomographySetting& s : all_settings()) table.push_back({s, setting_probabilities(state, s)});
  return table;
}

ProbabilityTable frequencies(const CountRecord& counts) {
  ProbabilityTable table;
  for (const SettingCounts& sc : counts.settings) {
    std::uint64_t total = 0;
    for (std::uint64_t c : sc.counts) total += c;
    if (total == 0) throw ConfigError("tomography: setting " + sc.setting.to_string() + " has no counts");
    SettingProbabilities sp{sc.setting, {}};
    for (std::size_t i = 0; i < kTomographyOutcomes; ++i) {
      sp.probabilities[i] = static_cast<double>(sc.counts[i]) / static_cast<double>(total);
    }
    table.push_back(sp);
  }
  return table;
}

CMatrix linear_inversion(const ProbabilityTable& table) {
  const std::vector<const SettingProbabilities*> rows = complete_table(table);
  const std::vector<TomographySetting>& settings = all_settings();
  constexpr int kDim = 1 << kTomographyQubits;
  constexpr std::array<Pauli, 4> letters{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

  CMatrix rho = CMatrix::Zero(kDim, kDim);
  for (int code = 0; code < 256; ++code) {
    std::array<Pauli, kTomographyQubits> p{};
    std::array<Matrix2, kTomographyQubits> factors;
    for (int q = 0; q < kTomographyQubits; ++q) {
      p[q] = letters[static_cast<std::size_t>((code >> (2 * (kTomographyQubits - 1 - q))) & 3)];
      factors[q] = pauli_matrix(p[q]);
    }
    double mean = 1.0;
    if (code != 0) {
      double sum = 0.0;
      int matches = 0;
      for (std::size_t s = 0; s < settings.size(); ++s) {
        bool compatible = true;
        for (int q = 0; q < kTomographyQubits; ++q) {
          compatible &= p[q] == Pauli::I || p[q] == settings[s].bases[q];
        }
        if (!compatible) continue;
        double e = 0.0;
        for (std::size_t o = 0; o < kTomographyOutcomes; ++o) {
          int parity = 0;
          for (int q = 0; q < kTomographyQubits; ++q) {
            if (p[q] != Pauli::I) parity ^= static_cast<int>(o >> (kTomographyQubits - 1 - q)) & 1;
          }
          e += parity ? -rows[s]->probabilities[o] : rows[s]->probabilities[o];
        }
        sum += e;
        ++matches;
      }
      mean = sum / matches;
    }
    rho += (mean / kDim) * kron_all(factors);
  }
  return rho;
}

CMatrix linear_inversion(const CountRecord& counts) { return linear_inversion(frequencies(counts)); }

DensityMatrix project_physical(const CMatrix& raw, ProjectionDiagnostics* diagnostics) {
  if (raw.rows() != raw.cols() || raw.rows() == 0) {
    throw std::invalid_argument("project_physical: matrix must be square");
  }
  const CMatrix herm = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
  if (eig.info() != Eigen::Success) throw NumericalError("project_physical: eigensolver failed");
  const Eigen::VectorXd mu = eig.eigenvalues();  // ascending
  const Eigen::Index d = mu.size();

  // Euclidean projection of mu onto the probability simplex.
  std::vector<double> sorted(mu.data(), mu.data() + d);
  std::sort(sorted.rbegin(), sorted.rend());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    cumulative += sorted[static_cast<std::size_t>(k)];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - t > 0.0) shift = t;
  }
  Eigen::VectorXd lambda = (mu.array() - shift).cwiseMax(0.0);

  if (diagnostics) {
    diagnostics->raw_min_eigenvalue = mu[0];
    diagnostics->negativity_removed = -(mu.array().min(0.0)).sum();
    diagnostics->eigenvalues_zeroed = static_cast<int>((lambda.array() == 0.0).count());
  }
  const CMatrix& v = eig.eigenvectors();
  CMatrix rho = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  return DensityMatrix(n, std::move(rho));
}

LocalUnitaryFit fidelity_local_unitary(const DensityMatrix& state, const StateVector& target,
                                       const LocalUnitaryOptions& options) {
  if (state.num_qubits() != kTomographyQubits || target.num_qubits() != kTomographyQubits) {
    throw std::invalid_argument("fidelity_local_unitary: four-qubit inputs required");
  }
  if (options.restarts < 1) throw ConfigError("fidelity_local_unitary: need at least one restart");
  const Objective objective = [&](std::span<const double> x) {
    return -unit_fidelity(state, target, x);
  };

  LocalUnitaryFit fit;
  fit.fidelity = -1.0;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> start(3 * kTomographyQubits, 0.0);
    if (r > 0) {
      Rng rng = make_stream(options.seed, "optimizer", static_cast<std::uint64_t>(r));
      for (double& a : start) a = 2.0 * std::numbers::pi * uniform01(rng);
    }
    const NelderMeadResult res = nelder_mead(objective, std::move(start), options.simplex);
    fit.evaluations += res.evaluations;
    if (-res.value > fit.fidelity) {
      fit.fidelity = -res.value;
      fit.angles = res.x;
    }
  }
  fit.fidelity = std::min(fit.fidelity, 1.0);
  for (int q = 0; q < kTomographyQubits; ++q) {
    fit.unitaries[q] = gates::euler_zyz(fit.angles[3 * q], fit.angles[3 * q + 1], fit.angles[3 * q + 2]);
  }
  return fit;
}

namespace {

QstReport finish(CMatrix raw, const StateVector& target, const LocalUnitaryOptions& options) {
  ProjectionDiagnostics diag;
  DensityMatrix physical = project_physical(raw, &diag);
  const double plain = fidelity(physical, target);
  LocalUnitaryFit local = fidelity_local_unitary(physical, target, options);
  return {{std::move(raw), std::move(physical), diag}, plain, std::move(local)};
}

}  // namespace

QstReport end_to_end_qst(const DensityMatrix& state, const StateVector& target,
                         std::uint64_t shots_per_setting, std::uint64_t seed,
                         const LocalUnitaryOptions& options) {
  if (shots_per_setting == 0) throw ConfigError("tomography: shots must be positive");
  Rng sampler = make_stream(seed, "sampler");
  const CountRecord counts = simulate_counts(state, shots_per_setting, sampler);
  LocalUnitaryOptions opts = options;
  opts.seed = seed;
  return finish(linear_inversion(counts), target, opts);
}

QstReport end_to_end_qst_exact(const DensityMatrix& state, const StateVector& target,
                               const LocalUnitaryOptions& options) {
  return finish(linear_inversion(exact_probabilities(state)), target, options);
}

QstReport reconstruct(const CountRecord& counts, const StateVector& target,
                      const LocalUnitaryOptions& options) {
  return finish(linear_inversion(counts), target, options);
}

}  // namespace mobqc

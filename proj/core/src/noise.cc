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

#include "mobqc/noise.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mobqc/errors.h"

namespace mobqc {
namespace {

void check_strength(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " strength must lie in [0, 1]");
  }
}

NoiseConfig config_for(CalibrationShape shape, int n, double parameter) {
  return shape == CalibrationShape::UniformDepolarizing
             ? NoiseConfig::uniform_depolarizing(n, parameter)
             : NoiseConfig::uniform_dephasing(n, parameter);
}

}  // namespace

double KrausChannel::completeness_error() const {
  Matrix2 sum = Matrix2::Zero();
  for (const Matrix2& k : kraus_ops) sum += k.adjoint() * k;
  return (sum - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

KrausChannel depolarizing(double p) {
  check_strength(p, "depolarizing");
  return {{std::sqrt(1.0 - 0.75 * p) * gates::identity(), std::sqrt(p / 4) * gates::pauli_x(),
           std::sqrt(p / 4) * gates::pauli_y(), std::sqrt(p / 4) * gates::pauli_z()}};
}

KrausChannel dephasing(double gamma) {
  check_strength(gamma, "dephasing");
  return {{std::sqrt(1.0 - gamma / 2) * gates::identity(),
           std::sqrt(gamma / 2) * gates::pauli_z()}};
}

DensityMatrix apply_channel(const DensityMatrix& state, int qubit, const KrausChannel& channel) {
  if (qubit < 0 || qubit >= state.num_qubits()) throw std::out_of_range("apply_channel: qubit");
  CMatrix acc = CMatrix::Zero(state.matrix().rows(), state.matrix().cols());
  for (const Matrix2& k : channel.kraus_ops) {
    if (k.cwiseAbs().maxCoeff() == 0.0) continue;
    acc += apply_local_sandwich(state.matrix(), state.num_qubits(), qubit, k);
  }
  acc = 0.5 * (acc + acc.adjoint());
  return DensityMatrix(state.num_qubits(), std::move(acc));
}

NoiseConfig NoiseConfig::none(int num_qubits) {
  const auto n = static_cast<std::size_t>(num_qubits);
  return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

NoiseConfig NoiseConfig::uniform_depolarizing(int num_qubits, double p) {
  NoiseConfig c = none(num_qubits);
  std::fill(c.depolarizing.begin(), c.depolarizing.end(), p);
  return c;
}

NoiseConfig NoiseConfig::uniform_dephasing(int num_qubits, double gamma) {
  NoiseConfig c = none(num_qubits);
  std::fill(c.dephasing.begin(), c.dephasing.end(), gamma);
  return c;
}

void NoiseConfig::validate(int num_qubits) const {
  const auto n = static_cast<std::size_t>(num_qubits);
  if (depolarizing.size() != n || dephasing.size() != n) {
    throw ConfigError("noise config needs " + std::to_string(n) +
                      " depolarizing and dephasing entries");
  }
  for (double x : depolarizing) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("depolarizing strength outside [0, 1]");
  }
  for (double x : dephasing) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("dephasing strength outside [0, 1]");
  }
}

bool NoiseConfig::is_noiseless() const {
  auto zero = [](double x) { return x == 0.0; };
  return std::all_of(depolarizing.begin(), depolarizing.end(), zero) &&
         std::all_of(dephasing.begin(), dephasing.end(), zero);
}

DensityMatrix apply_noise(const DensityMatrix& state, const NoiseConfig& config) {
  config.validate(state.num_qubits());
  DensityMatrix out = state;
  for (int q = 0; q < state.num_qubits(); ++q) {
    const auto k = static_cast<std::size_t>(q);
    if (config.dephasing[k] > 0.0) out = apply_channel(out, q, dephasing(config.dephasing[k]));
    if (config.depolarizing[k] > 0.0) {
      out = apply_channel(out, q, depolarizing(config.depolarizing[k]));
    }
  }
  return out;
}

double noisy_fidelity(const StateVector& resource, CalibrationShape shape, double parameter) {
  const DensityMatrix noisy =
      apply_noise(DensityMatrix(resource), config_for(shape, resource.num_qubits(), parameter));
  return fidelity(noisy, resource);
}

Calibration calibrate(double target_fidelity, const StateVector& resource, CalibrationShape shape,
                      double tolerance) {
  const int n = resource.num_qubits();
  const double floor = noisy_fidelity(resource, shape, 1.0);
  if (!(target_fidelity > floor && target_fidelity <= 1.0 + kAlgebraicTol)) {
    throw NumericalError("calibration target " + std::to_string(target_fidelity) +
                         " is unreachable: fidelity range is (" + std::to_string(floor) + ", 1]");
  }
  if (std::abs(noisy_fidelity(resource, shape, 0.0) - target_fidelity) <= tolerance) {
    return {NoiseConfig::none(n), 0.0, 1.0, 0};
  }
  double lo = 0.0, hi = 1.0, mid = 0.5, f = 0.0;
  int it = 0;
  for (; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    f = noisy_fidelity(resource, shape, mid);
    if (std::abs(f - target_fidelity) <= tolerance || hi - lo < 1e-15) break;
    // Fidelity decreases with noise strength.
    if (f > target_fidelity) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (std::abs(f - target_fidelity) > 5e-4) {
    throw NumericalError("calibration did not converge");
  }
  return {config_for(shape, n, mid), mid, f, it + 1};
}

}  // namespace mobqc

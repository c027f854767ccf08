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

#include <vector>

#include "mobqc/state.h"

namespace mobqc {

/// Single-qubit CPTP map given by its Kraus operators.
struct KrausChannel {
  std::vector<Matrix2> kraus_ops;

  /// max |sum K^dagger K - I|
  double completeness_error() const;
};

/// rho -> (1-p) rho + p I/2. Throws std::invalid_argument outside [0, 1].
KrausChannel depolarizing(double p);
/// Off-diagonals scaled by (1 - gamma). Throws std::invalid_argument outside [0, 1].
KrausChannel dephasing(double gamma);

DensityMatrix apply_channel(const DensityMatrix& state, int qubit, const KrausChannel& channel);

/// Per-qubit noise strengths.
struct NoiseConfig {
  std::vector<double> depolarizing;
  std::vector<double> dephasing;

  static NoiseConfig none(int num_qubits);
  static NoiseConfig uniform_depolarizing(int num_qubits, double p);
  static NoiseConfig uniform_dephasing(int num_qubits, double gamma);

  /// Throws ConfigError on a size mismatch or a value outside [0, 1].
  void validate(int num_qubits) const;
  bool is_noiseless() const;

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

/// Dephasing then depolarizing on each qubit.
DensityMatrix apply_noise(const DensityMatrix& state, const NoiseConfig& config);

enum class CalibrationShape : std::uint8_t { UniformDepolarizing, UniformDephasing };

struct Calibration {
  NoiseConfig config;
  double parameter;
  double fidelity;
  int iterations;
};

/// Fidelity to `resource` when its ideal state passes through `shape` at
/// strength `parameter` on every qubit.
double noisy_fidelity(const StateVector& resource, CalibrationShape shape, double parameter);

/// Bisects the single free strength until the noisy fidelity to `resource`
/// is within `tolerance` of the target. Throws NumericalError when the target
/// is outside (fidelity at strength 1, 1].
Calibration calibrate(double target_fidelity, const StateVector& resource,
                      CalibrationShape shape = CalibrationShape::UniformDepolarizing,
                      double tolerance = 1e-12);

}  // namespace mobqc

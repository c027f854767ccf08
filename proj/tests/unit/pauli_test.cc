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

#include "dense_oracle.h"
#include "generators.h"
#include "mobqc/pauli.h"

namespace mobqc {
namespace {

std::string letters(const PauliString& p) {
  std::string s;
  for (Pauli x : p.paulis) s += pauli_char(x);
  return s;
}

TEST(PauliString, ParseAndPrintRoundTrip) {
  const PauliString p = PauliString::parse("-ZX_Y");
  EXPECT_EQ(p.sign, -1);
  EXPECT_EQ(p.to_string(), "-ZXIY");
  EXPECT_EQ(PauliString::parse(p.to_string()), p);
  EXPECT_EQ(PauliString::parse("XX").to_string(), "+XX");
  EXPECT_TRUE(PauliString::parse("+II").is_identity());
  EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(PauliString, ExpectationMatchesDenseOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::integer(rng, 1, 4);
    const PauliString p = gen::pauli_string(n, rng);
    const oracle::Mat full = p.sign * oracle::pauli_string(letters(p));
    const StateVector s = random_pure_state(n, rng);
    const DensityMatrix rho = gen::density_matrix(n, 3, rng);
    EXPECT_NEAR(expectation(s, p), (s.amplitudes().adjoint() * full * s.amplitudes())(0, 0).real(), 1e-10);
    EXPECT_NEAR(expectation(rho, p), (full * rho.matrix()).trace().real(), 1e-10);
    EXPECT_TRUE(apply_pauli_string(s, p).amplitudes().isApprox(full * s.amplitudes(), 1e-10));
  }
}

}  // namespace
}  // namespace mobqc

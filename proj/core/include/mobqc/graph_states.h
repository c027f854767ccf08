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

#include <utility>
#include <vector>

#include "mobqc/pauli.h"
#include "mobqc/state.h"

namespace mobqc {

/// Undirected simple graph over register indices 0..num_vertices-1.
/// Serialized with 1-based vertex labels (see serialization.h).
struct GraphSpec {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

/// Throws std::invalid_argument on self-loops, out-of-range vertices or
/// repeated edges (a repeated CZ would cancel).
void validate(const GraphSpec& spec);

GraphSpec path_graph(int num_vertices);
GraphSpec star_graph(int num_vertices, int center);

/// Path 1-2-3-4.
GraphSpec linear_cluster4_graph();
/// Center at qubit 3 with leaves 1, 2, 4, so the labels line up with the
/// entangling-gate pattern (inputs 1,2; outputs 1,4; measured 2,3).
GraphSpec star_cluster4_graph();

/// |+>^n followed by CZ on every edge, in edge order.
StateVector build_graph_state(const GraphSpec& spec);

/// (|0+0+> + |0-1-> + |1-0+> + |1+1->)/2
StateVector linear_cluster4();
/// (|++0+> + |--1->)/sqrt(2)
StateVector star_cluster4();

/// K_v = X_v prod_{u ~ v} Z_u, one generator per vertex.
std::vector<PauliString> stabilizers(const GraphSpec& spec);
std::vector<double> check_stabilizers(const StateVector& state, const GraphSpec& spec);
std::vector<double> check_stabilizers(const DensityMatrix& state, const GraphSpec& spec);

}  // namespace mobqc

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

#include "mobqc/graph_states.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mobqc {

void validate(const GraphSpec& spec) {
  if (spec.num_vertices < 1 || spec.num_vertices > 16) {
    throw std::invalid_argument("GraphSpec: vertex count must be in [1, 16]");
  }
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : spec.edges) {
    if (u < 0 || v < 0 || u >= spec.num_vertices || v >= spec.num_vertices) {
      throw std::invalid_argument("GraphSpec: edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("GraphSpec: self-loop");
    if (!seen.insert(std::minmax(u, v)).second) {
      throw std::invalid_argument("GraphSpec: repeated edge");
    }
  }
}

GraphSpec path_graph(int num_vertices) {
  GraphSpec g{num_vertices, {}};
  for (int v = 0; v + 1 < num_vertices; ++v) g.edges.emplace_back(v, v + 1);
  return g;
}

GraphSpec star_graph(int num_vertices, int center) {
  GraphSpec g{num_vertices, {}};
  for (int v = 0; v < num_vertices; ++v) {
    if (v != center) g.edges.emplace_back(center, v);
  }
  validate(g);
  return g;
}

GraphSpec linear_cluster4_graph() { return path_graph(4); }
GraphSpec star_cluster4_graph() { return star_graph(4, 2); }

StateVector build_graph_state(const GraphSpec& spec) {
  validate(spec);
  std::vector<Ket2> plus(static_cast<std::size_t>(spec.num_vertices), kets::plus());
  StateVector state = StateVector::product(plus);
  for (auto [u, v] : spec.edges) state = apply_cz(std::move(state), u, v);
  return state;
}

StateVector linear_cluster4() { return build_graph_state(linear_cluster4_graph()); }
StateVector star_cluster4() { return build_graph_state(star_cluster4_graph()); }

std::vector<PauliString> stabilizers(const GraphSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.num_vertices);
  std::vector<PauliString> out(n, PauliString{std::vector<Pauli>(n, Pauli::I), 1});
  for (std::size_t v = 0; v < n; ++v) out[v].paulis[v] = Pauli::X;
  for (auto [u, v] : spec.edges) {
    out[static_cast<std::size_t>(u)].paulis[static_cast<std::size_t>(v)] = Pauli::Z;
    out[static_cast<std::size_t>(v)].paulis[static_cast<std::size_t>(u)] = Pauli::Z;
  }
  return out;
}

namespace {
template <class State>
std::vector<double> check_impl(const State& state, const GraphSpec& spec) {
  if (state.num_qubits() != spec.num_vertices) {
    throw std::invalid_argument("check_stabilizers: state/graph size mismatch");
  }
  std::vector<double> out;
  for (const PauliString& k : stabilizers(spec)) out.push_back(expectation(state, k));
  return out;
}
}  // namespace

std::vector<double> check_stabilizers(const StateVector& state, const GraphSpec& spec) {
  return check_impl(state, spec);
}

std::vector<double> check_stabilizers(const DensityMatrix& state, const GraphSpec& spec) {
  return check_impl(state, spec);
}

}  // namespace mobqc

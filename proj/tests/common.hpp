// Copyright 2026 The mbqc Authors
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

#include <random>

#include "mbqc/graph_register.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc::fixture_gen {

inline CliffordCircuit random_clifford(std::size_t n, std::size_t len, std::mt19937_64& rng) {
  CliffordCircuit c;
  std::uniform_int_distribution<int> kind(0, 7);
  std::uniform_int_distribution<Qubit> q(0, static_cast<Qubit>(n - 1));
  while (c.size() < len) {
    auto k = static_cast<GateKind>(kind(rng));
    Qubit a = q(rng), b = q(rng);
    if (k == GateKind::CX || k == GateKind::CZ) {
      if (n < 2 || a == b) continue;
      c.push_back({k, a, b});
    } else {
      c.push_back({k, a, 0});
    }
  }
  return c;
}

inline PauliString random_pauli(std::size_t n, std::mt19937_64& rng, bool allow_identity = true) {
  std::uniform_int_distribution<int> d(0, 3);
  for (;;) {
    PauliString p(n);
    for (Qubit q = 0; q < n; ++q) p.set(q, static_cast<Pauli>(d(rng)));
    if (allow_identity || !p.is_identity_word()) return p;
  }
}

/// Random spanning tree plus each remaining edge with probability p.
inline GraphRegister random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  GraphRegister g = GraphRegister::plus_state(n);
  for (Qubit v = 1; v < n; ++v) g.add_edge(v, std::uniform_int_distribution<Qubit>(0, v - 1)(rng));
  std::bernoulli_distribution extra(p);
  for (Qubit a = 0; a < n; ++a)
    for (Qubit b = a + 1; b < n; ++b)
      if (!g.has_edge(a, b) && extra(rng)) g.add_edge(a, b);
  return g;
}

}  // namespace mbqc::fixture_gen

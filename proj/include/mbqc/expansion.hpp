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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/graph_register.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

/// Teleportation-expanded Clifford circuit. Logical qubit q starts on wire q
/// and ends on output_wires[q]. The wires in `measured` are read in Z after
/// `circuit`; bit k set means frame[k] must be applied to the logical output.
struct ExpandedCircuit {
  std::size_t logical_qubits = 0;
  std::size_t total_qubits = 0;
  CliffordCircuit circuit;
  std::vector<Qubit> measured;
  std::vector<PauliString> frame;
  std::vector<Qubit> output_wires;
  /// Two-qubit gates of each entangling layer; gates within a layer act on
  /// disjoint wires.
  std::vector<CliffordCircuit> layers;

  std::size_t ancilla_count() const { return total_qubits - logical_qubits; }

  /// Logical Pauli frame for one outcome record.
  PauliString correction(const std::vector<int>& bits) const {
    if (bits.size() != measured.size()) throw std::invalid_argument("outcome count does not match measurements");
    PauliString p(logical_qubits);
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (bits[k]) p = p * frame[k];
    return p;
  }

  /// The correction as gates on the output wires.
  CliffordCircuit correction_gates(const std::vector<int>& bits) const {
    CliffordCircuit c;
    auto p = correction(bits);
    for (Qubit q = 0; q < logical_qubits; ++q) {
      switch (p.get(q)) {
        case Pauli::X: c.push_back(CliffordGate::x(output_wires[q])); break;
        case Pauli::Y: c.push_back(CliffordGate::y(output_wires[q])); break;
        case Pauli::Z: c.push_back(CliffordGate::z(output_wires[q])); break;
        case Pauli::I: break;
      }
    }
    return c;
  }
};

/// Entangling depth of a circuit taken in the given gate order.
inline std::size_t entangling_depth(const CliffordCircuit& c) { return schedule(c, false).entangling_layers; }

/// Rewrites a Clifford circuit on n qubits so that it has three entangling
/// layers: Bell pairs, the original two-qubit gates on fresh segment wires,
/// Bell measurements. Circuits of entangling depth at most one are returned
/// unchanged.
inline ExpandedCircuit expand_constant_depth(const CliffordCircuit& c, std::size_t n) {
  for (const auto& g : c)
    if (g.max_qubit() >= n) throw std::invalid_argument("gate outside the register");
  ExpandedCircuit out;
  out.logical_qubits = n;
  out.output_wires.resize(n);
  for (Qubit q = 0; q < n; ++q) out.output_wires[q] = q;
  if (entangling_depth(c) <= 1) {
    out.total_qubits = n;
    out.circuit = c;
    CliffordCircuit two;
    for (const auto& g : c)
      if (g.two_qubit()) two.push_back(g);
    if (!two.empty()) out.layers.push_back(two);
    return out;
  }

  // Segment bookkeeping: seg[q] is the wire currently holding qubit q.
  std::vector<Qubit> seg(n);
  for (Qubit q = 0; q < n; ++q) seg[q] = q;
  Qubit next = static_cast<Qubit>(n);
  std::vector<bool> touched(n, false);

  struct Hop {
    Qubit old_wire, bell, fresh;
    Qubit logical;
    std::size_t before;  // index in c of the gate that first acts on `fresh`
  };
  std::vector<Hop> hops;
  CliffordCircuit pre, prep, middle, after, meas;

  for (std::size_t i = 0; i < c.size(); ++i) {
    CliffordGate g = c[i];
    if (!g.two_qubit()) {
      (touched[g.a] ? after : pre).push_back(detail::remap(g, seg));
      continue;
    }
    for (Qubit q : {g.a, g.b}) {
      if (!touched[q]) {
        touched[q] = true;
        continue;
      }
      Hop h{seg[q], next, static_cast<Qubit>(next + 1), q, i};
      next += 2;
      hops.push_back(h);
      seg[q] = h.fresh;
    }
    middle.push_back(detail::remap(g, seg));
  }
  out.total_qubits = next;
  for (const auto& h : hops) {
    prep.push_back(CliffordGate::h(h.bell));
    prep.push_back(CliffordGate::cx(h.bell, h.fresh));
    meas.push_back(CliffordGate::cx(h.old_wire, h.bell));
    meas.push_back(CliffordGate::h(h.old_wire));
  }
  // Single-qubit gates between two entangling gates must land on the wire
  // that is teleported away, so `after` holds gates in source order mapped
  // at the time they occurred.
  for (auto* part : {&pre, &prep, &middle, &after, &meas})
    out.circuit.insert(out.circuit.end(), part->begin(), part->end());
  for (auto* part : {&prep, &middle, &meas}) {
    CliffordCircuit two;
    for (const auto& g : *part)
      if (g.two_qubit()) two.push_back(g);
    out.layers.push_back(std::move(two));
  }

  for (const auto& h : hops) {
    // outcome of old_wire -> Z byproduct, outcome of bell -> X byproduct
    CliffordCircuit suffix(c.begin() + static_cast<std::ptrdiff_t>(h.before), c.end());
    out.measured.push_back(h.old_wire);
    out.frame.push_back(conjugate(suffix, PauliString::single(n, h.logical, Pauli::Z)));
    out.measured.push_back(h.bell);
    out.frame.push_back(conjugate(suffix, PauliString::single(n, h.logical, Pauli::X)));
  }
  out.output_wires = seg;
  return out;
}

inline ExpandedCircuit expand_constant_depth(const std::vector<Step>& steps, std::size_t n) {
  CliffordCircuit c;
  for (const auto& s : steps) {
    if (std::holds_alternative<PauliRotation>(s)) throw std::invalid_argument("constant-depth expansion needs a Clifford-only circuit");
    c.push_back(std::get<CliffordGate>(s));
  }
  return expand_constant_depth(c, n);
}

namespace detail {

/// Fidelity of a stabilizer register with |0...0> on `wires`, consuming it.
inline double zero_overlap(GraphRegister& g, const std::vector<Qubit>& wires) {
  std::mt19937_64 rng(0);
  double f = 1.0;
  for (Qubit q : wires) {
    if (g.is_deterministic(q, Pauli::Z)) {
      if (g.measure(q, Pauli::Z, rng).outcome != 0) return 0.0;
    } else {
      g.measure(q, Pauli::Z, rng, 0);
      f *= 0.5;
    }
  }
  return f;
}

}  // namespace detail

/// Process fidelity of one outcome branch of an expansion against the
/// original circuit. A reference register is Bell-paired with the logical
/// inputs, the expanded circuit runs with forced outcomes, the frame is
/// applied, and the original circuit is undone on the outputs; the overlap
/// with the starting state is the Choi-state fidelity.
inline double expansion_branch_fidelity(const CliffordCircuit& original, const ExpandedCircuit& ex,
                                        const std::vector<int>& bits) {
  const std::size_t n = ex.logical_qubits, total = ex.total_qubits;
  GraphRegister g(total + n);
  std::mt19937_64 rng(0);
  for (Qubit q = 0; q < n; ++q) {
    g.apply(CliffordGate::h(static_cast<Qubit>(total + q)));
    g.apply(CliffordGate::cx(static_cast<Qubit>(total + q), q));
  }
  g.apply(ex.circuit);
  for (std::size_t k = 0; k < ex.measured.size(); ++k) {
    try {
      g.measure(ex.measured[k], Pauli::Z, rng, bits.at(k));
    } catch (const std::domain_error&) {
      return 0.0;
    }
  }
  g.apply(ex.correction_gates(bits));
  for (const auto& gate : inverse(original)) g.apply(detail::remap(gate, ex.output_wires));
  std::vector<Qubit> check;
  for (Qubit q = 0; q < n; ++q) {
    auto ref = static_cast<Qubit>(total + q);
    g.apply(CliffordGate::cx(ref, ex.output_wires[q]));
    g.apply(CliffordGate::h(ref));
    check.push_back(ref);
    check.push_back(ex.output_wires[q]);
  }
  return detail::zero_overlap(g, check);
}

/// Same quantity on the dense oracle, for small expansions.
inline double expansion_branch_fidelity_dense(const CliffordCircuit& original, const ExpandedCircuit& ex,
                                              const std::vector<int>& bits) {
  const std::size_t n = ex.logical_qubits, total = ex.total_qubits;
  StateVector s(total + n);
  for (Qubit q = 0; q < n; ++q) {
    s.apply(CliffordGate::h(static_cast<Qubit>(total + q)));
    s.apply(CliffordGate::cx(static_cast<Qubit>(total + q), q));
  }
  s.apply(ex.circuit);
  for (std::size_t k = 0; k < ex.measured.size(); ++k)
    if (s.project(ex.measured[k], bits.at(k)) < 1e-12) return 0.0;
  s.normalize();
  s.apply(ex.correction_gates(bits));

  StateVector want(total + n);
  for (Qubit q = 0; q < n; ++q) {
    want.apply(CliffordGate::h(static_cast<Qubit>(total + q)));
    want.apply(CliffordGate::cx(static_cast<Qubit>(total + q), ex.output_wires[q]));
  }
  for (const auto& gate : original) want.apply(detail::remap(gate, ex.output_wires));
  for (std::size_t k = 0; k < ex.measured.size(); ++k)
    if (bits[k]) want.apply(CliffordGate::x(ex.measured[k]));
  return s.fidelity(want);
}

/// True when every layer acts on disjoint wires and the layers hold exactly
/// the two-qubit gates of the circuit, in order.
inline bool layers_are_valid(const ExpandedCircuit& ex) {
  CliffordCircuit flat;
  for (const auto& layer : ex.layers) {
    std::vector<bool> used(ex.total_qubits, false);
    for (const auto& g : layer) {
      if (!g.two_qubit() || used[g.a] || used[g.b]) return false;
      used[g.a] = used[g.b] = true;
      flat.push_back(g);
    }
  }
  CliffordCircuit two;
  for (const auto& g : ex.circuit)
    if (g.two_qubit()) two.push_back(g);
  return flat == two;
}

struct ExpansionCheck {
  double min_fidelity = 1.0;
  std::size_t branches = 0;
};

/// Checks the all-zero branch, every single-bit branch and `random_branches`
/// random outcome records.
inline ExpansionCheck check_expansion(const CliffordCircuit& original, const ExpandedCircuit& ex,
                                      std::size_t random_branches, std::uint64_t seed) {
  ExpansionCheck r;
  const std::size_t m = ex.measured.size();
  auto run = [&](const std::vector<int>& bits) {
    r.min_fidelity = std::min(r.min_fidelity, expansion_branch_fidelity(original, ex, bits));
    ++r.branches;
  };
  std::vector<int> bits(m, 0);
  run(bits);
  for (std::size_t k = 0; k < m; ++k) {
    bits[k] = 1;
    run(bits);
    bits[k] = 0;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < random_branches && m > 0; ++t) {
    for (auto& b : bits) b = static_cast<int>(rng() & 1u);
    run(bits);
  }
  return r;
}

}  // namespace mbqc

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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/graph_register.hpp"
#include "mbqc/hamiltonian.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc::fixtures {

// Four-vertex weighted max-cut instance and its p = 1 QAOA ansatz.

inline constexpr double kQaoaGamma = -2.290;
inline constexpr double kQaoaBeta = -2.186;

inline Hamiltonian qaoa_cost() {
  Hamiltonian h(4);
  h.add(1.0, parse_pauli("Z2 Z3", 4));
  h.add(1.0, parse_pauli("Z0 Z2", 4));
  h.add(0.5, parse_pauli("Z0 Z1", 4));
  h.add(1.0, parse_pauli("Z1 Z2", 4));
  return h;
}

/// exp(-i beta/2 sum X) exp(-i gamma/2 H_c) as rotations; starts from |+>^4.
inline std::vector<PauliRotation> qaoa_rotations(double gamma = kQaoaGamma, double beta = kQaoaBeta) {
  std::vector<PauliRotation> r;
  const Hamiltonian cost = qaoa_cost();
  for (const auto& t : cost.terms()) r.emplace_back(t.string, gamma * t.coefficient);
  for (Qubit q = 0; q < 4; ++q) r.emplace_back(PauliString::single(4, q, Pauli::X), beta);
  return r;
}

inline CliffordCircuit plus_state(std::size_t n) {
  CliffordCircuit c;
  for (Qubit q = 0; q < n; ++q) c.push_back(CliffordGate::h(q));
  return c;
}

// Water molecule, frozen core, ten spin orbitals.

inline constexpr std::size_t kWaterQubits = 10;
inline constexpr std::array<double, 4> kWaterIdeal{-0.2565, -0.2546, 1.0223, -0.1223};
inline constexpr double kWaterOffset = -72.2129;
inline constexpr double kWaterGroundEnergy = -74.9910;

inline std::vector<PauliRotation> water_ansatz() {
  const std::vector<std::pair<const char*, double>> pool{
      {"X0X1Y8X9", -0.157}, {"X2X3Y8X9", -0.080}, {"X4X5Y8X9", -0.023},
      {"X0X1Y6X7", -0.078}, {"X2X3Y6X7", -0.081}, {"X4X5Y6X7", -0.054},
      {"X1X2Y6X9", 0.099},  {"X0X3Y6X9", -0.067}, {"X1X2X7Y8", -0.065},
  };
  std::vector<PauliRotation> r;
  for (auto [s, t] : pool) r.emplace_back(parse_pauli(s, kWaterQubits), t);
  return r;
}

/// Hartree-Fock reference: orbitals 0..5 occupied, bitstring 0000111111.
inline CliffordCircuit water_reference() {
  CliffordCircuit c;
  for (Qubit q = 0; q < 6; ++q) c.push_back(CliffordGate::x(q));
  return c;
}

/// Group k (0..3) of the water Hamiltonian, without the constant offset.
inline Hamiltonian water_group(std::size_t k) {
  static const std::vector<std::vector<std::pair<const char*, double>>> data{
      // H1
      {
          {"Y0X1X2Y3", 0.01176},
          {"Y0Y1X2X3", -0.01176},
          {"X0X1Y2Y3", -0.01176},
          {"X0Y1Y2X3", 0.01176},
          {"Y0Z1Y2Y7Z8Y9", 0.01186},
          {"Y0Z1Y2X7Z8X9", 0.01186},
          {"X0Z1X2Y7Z8Y9", 0.01186},
          {"X0Z1X2X7Z8X9", 0.01186},
          {"Y1Z2Y3Y6Z7Y8", 0.01186},
          {"Y1Z2Y3X6Z7X8", 0.01186},
          {"X1Z2X3Y6Z7Y8", 0.01186},
          {"X1Z2X3X6Z7X8", 0.01186},
          {"Y6X7X8Y9", 0.02894},
          {"Y6Y7X8X9", -0.02894},
          {"X6X7Y8Y9", -0.02894},
          {"X6Y7Y8X9", 0.02894},
          {"Y0Z1Y2X6Z7X8", 0.00076},
          {"X0Z1X2Y6Z7Y8", 0.00076},
          {"Y1Z2Y3X7Z8X9", 0.00076},
          {"X1Z2X3Y7Z8Y9", 0.00076},
          {"Z0Z2", 0.13797},
          {"Y0Z1Y2Y6Z7Y8", -0.00757},
          {"X0Z1X2X6Z7X8", -0.00757},
          {"Z1Z3", 0.13797},
          {"Y1Z2Y3Y7Z8Y9", -0.00757},
          {"X1Z2X3X7Z8X9", -0.00757},
          {"Z6Z8", 0.1126},
          {"Z7Z9", 0.1126},
          {"Z4", 0.48237},
          {"Z5", 0.48237},
          {"Z4Z5", 0.22004},
      },
      // H2
      {
          {"Y0X1X3Z4Z5Y6", 0.00715},
          {"Y0Y1Y3Z4Z5Y6", 0.00715},
          {"X0X1X3Z4Z5X6", 0.00715},
          {"X0Y1Y3Z4Z5X6", 0.00715},
          {"Y0Z1Z2Z3Z4Z5Y6Y7Z8Y9", -0.01627},
          {"Y0Z1Z2Z3Z4Z5Y6X7Z8X9", -0.01627},
          {"X0Z1Z2Z3Z4Z5X6Y7Z8Y9", -0.01627},
          {"X0Z1Z2Z3Z4Z5X6X7Z8X9", -0.01627},
          {"Y1X2X3Z4Z5Z6Z7Y8", 0.00064},
          {"Y1Y2X3Z4Z5Z6Z7X8", -0.00064},
          {"X1X2Y3Z4Z5Z6Z7Y8", -0.00064},
          {"X1Y2Y3Z4Z5Z6Z7X8", 0.00064},
          {"Y2Z3Z4Z5Z6X7X8Y9", -0.01444},
          {"Y2Z3Z4Z5Z6Y7X8X9", 0.01444},
          {"X2Z3Z4Z5Z6X7Y8Y9", 0.01444},
          {"X2Z3Z4Z5Z6Y7Y8X9", -0.01444},
          {"Y0Z1X2X6Z7Y8", -0.00832},
          {"X0Z1Y2Y6Z7X8", -0.00832},
          {"Z0Z6", 0.12496},
          {"Z2Z8", 0.13512},
      },
      // H3
      {
          {"Y0X1X4Y5", 0.0072},
          {"Y0Y1X4X5", -0.0072},
          {"X0X1Y4Y5", -0.0072},
          {"X0Y1Y4X5", 0.0072},
          {"Y2X3X8Y9", 0.01716},
          {"Y2Y3X8X9", -0.01716},
          {"X2X3Y8Y9", -0.01716},
          {"X2Y3Y8X9", 0.01716},
          {"Z2Z9", 0.15228},
          {"Z3Z8", 0.15228},
          {"Z3Z9", 0.13512},
          {"Z0Z1", 0.1583},
          {"Z2Z3", 0.19617},
          {"Z6Z7", 0.14912},
          {"Z8Z9", 0.15503},
          {"Z0Z4", 0.15003},
          {"Z0Z5", 0.15723},
          {"Z1Z4", 0.15723},
          {"Z1Z5", 0.15003},
          {"Z6", 0.10364},
          {"Z7", 0.10364},
      },
      // H4
      {
          {"Y0X1X2Z3Z4Z5Z6Y7", -0.00715},
          {"Y0Y1X2Z3Z4Z5Z6X7", 0.00715},
          {"X0X1Y2Z3Z4Z5Z6Y7", 0.00715},
          {"X0Y1Y2Z3Z4Z5Z6X7", -0.00715},
          {"Y0Z1Y2Y3Z4Z5Z6Z7Z8Y9", 0.00064},
          {"Y0Z1Y2X3Z4Z5Z6Z7Z8X9", 0.00064},
          {"X0Z1X2Y3Z4Z5Z6Z7Z8Y9", 0.00064},
          {"X0Z1X2X3Z4Z5Z6Z7Z8X9", 0.00064},
          {"Y1Z2Z3Z4Z5X6X7Y8", -0.01627},
          {"Y1Z2Z3Z4Z5Y6X7X8", 0.01627},
          {"X1Z2Z3Z4Z5X6Y7Y8", 0.01627},
          {"X1Z2Z3Z4Z5Y6Y7X8", -0.01627},
          {"Y3Z4Z5X6X8Y9", 0.01444},
          {"Y3Z4Z5Y6Y8Y9", 0.01444},
          {"X3Z4Z5X6X8X9", 0.01444},
          {"X3Z4Z5Y6Y8X9", 0.01444},
          {"Y1Z2X3X7Z8Y9", -0.00832},
          {"X1Z2Y3Y7Z8X9", -0.00832},
          {"Z1Z7", 0.12496},
      },
  };
  Hamiltonian h(kWaterQubits);
  for (auto [s, c] : data.at(k)) h.add(c, parse_pauli(s, kWaterQubits));
  return h;
}

/// Generators listed for the first water group.
inline std::vector<PauliString> water_group1_basis() {
  std::vector<PauliString> b;
  for (const char* s : {"Z6Z8", "Z7Z9", "Z5", "Z4Z5", "X6Y7Y8X9", "Y0Z1Y2Y6Z7Y8", "X0Z1X2X6Z7X8", "Y1Z2Y3Y7Z8Y9",
                        "X1Z2X3X7Z8X9"})
    b.push_back(parse_pauli(s, kWaterQubits));
  return b;
}

// Qubit double excitation on (i, j, a, b) = (0, 1, 2, 3), angle rescaled by 4.

inline std::vector<PauliRotation> double_excitation(double theta) {
  std::vector<PauliRotation> r;
  for (const char* s : {"XYXX", "YXXX", "YYYX", "YYXY"}) r.emplace_back(parse_pauli(s), -theta);
  for (const char* s : {"XXYX", "XXXY", "YXYY", "XYYY"}) r.emplace_back(parse_pauli(s), theta);
  return r;
}

// Small graphs.

/// Local complementation at vertex 0 removes one edge.
inline GraphRegister lc_example() { return GraphRegister::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

inline GraphRegister complete_graph(std::size_t n) {
  GraphRegister g = GraphRegister::plus_state(n);
  for (Qubit a = 0; a < n; ++a)
    for (Qubit b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

inline GraphRegister star_graph(std::size_t n) {
  GraphRegister g = GraphRegister::plus_state(n);
  for (Qubit b = 1; b < n; ++b) g.add_edge(0, b);
  return g;
}

}  // namespace mbqc::fixtures

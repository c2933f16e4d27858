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

#include "mbqc/expansion.hpp"

#include <gtest/gtest.h>

#include <random>

#include "common.hpp"

using namespace mbqc;

namespace {

CliffordCircuit random_layered(std::size_t n, std::size_t depth, std::mt19937_64& rng) {
  CliffordCircuit c;
  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (auto& g : fixture_gen::random_clifford(n, 2, rng))
      if (!g.two_qubit()) c.push_back(g);
    std::vector<Qubit> perm(n);
    for (Qubit q = 0; q < n; ++q) perm[q] = q;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 0; k + 1 < n; k += 2)
      c.push_back(rng() & 1 ? CliffordGate::cx(perm[k], perm[k + 1]) : CliffordGate::cz(perm[k], perm[k + 1]));
  }
  return c;
}

}  // namespace

TEST(Expansion, SingleGateUnchanged) {
  CliffordCircuit c{CliffordGate::h(0), CliffordGate::cx(0, 1)};
  auto ex = expand_constant_depth(c, 2);
  EXPECT_EQ(ex.total_qubits, 2u);
  EXPECT_EQ(ex.circuit.size(), c.size());
  EXPECT_TRUE(ex.measured.empty());
  EXPECT_EQ(ex.layers.size(), 1u);
}

TEST(Expansion, TwoSequentialGatesSharingAQubit) {
  CliffordCircuit c{CliffordGate::h(0), CliffordGate::cx(0, 1), CliffordGate::s(1), CliffordGate::cx(1, 2)};
  auto ex = expand_constant_depth(c, 3);
  EXPECT_EQ(ex.layers.size(), 3u);
  EXPECT_TRUE(layers_are_valid(ex));
  EXPECT_LE(entangling_depth(ex.circuit), 3u);
  EXPECT_EQ(ex.ancilla_count(), 2u);
  const std::size_t m = ex.measured.size();
  ASSERT_EQ(m, 2u);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> bits(m);
    for (std::size_t k = 0; k < m; ++k) bits[k] = (mask >> k) & 1;
    EXPECT_NEAR(expansion_branch_fidelity_dense(c, ex, bits), 1.0, 1e-9) << mask;
    EXPECT_NEAR(expansion_branch_fidelity(c, ex, bits), 1.0, 1e-12) << mask;
  }
}

TEST(Expansion, WrongFrameIsDetected) {
  CliffordCircuit c{CliffordGate::cx(0, 1), CliffordGate::cx(1, 0)};
  auto ex = expand_constant_depth(c, 2);
  ASSERT_FALSE(ex.frame.empty());
  ex.frame[0] = PauliString(2);
  std::vector<int> bits(ex.measured.size(), 0);
  bits[0] = 1;
  EXPECT_LT(expansion_branch_fidelity(c, ex, bits), 0.5);
  EXPECT_LT(expansion_branch_fidelity_dense(c, ex, bits), 0.5);
}

TEST(Expansion, StabilizerCheckAgreesWithDense) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_layered(3, 2, rng);
    auto ex = expand_constant_depth(c, 3);
    if (ex.total_qubits + 3 > 16) continue;
    for (int b = 0; b < 4; ++b) {
      std::vector<int> bits(ex.measured.size());
      for (auto& x : bits) x = rng() & 1;
      EXPECT_NEAR(expansion_branch_fidelity(c, ex, bits), expansion_branch_fidelity_dense(c, ex, bits), 1e-9);
    }
  }
}

TEST(Expansion, RandomCircuitsReachThreeLayers) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 4, depth = 2 + trial % 5;
    auto c = random_layered(n, depth, rng);
    if (entangling_depth(c) < 2) continue;
    auto ex = expand_constant_depth(c, n);
    EXPECT_EQ(ex.layers.size(), 3u);
    EXPECT_TRUE(layers_are_valid(ex));
    EXPECT_LE(entangling_depth(ex.circuit), 3u);
    std::size_t two = 0;
    for (const auto& g : c) two += g.two_qubit();
    EXPECT_LE(ex.ancilla_count(), 4 * two);
    auto r = check_expansion(c, ex, 16, trial);
    EXPECT_NEAR(r.min_fidelity, 1.0, 1e-12) << "trial " << trial;
  }
}

TEST(Expansion, RejectsRotations) {
  std::vector<Step> s{CliffordGate::h(0), PauliRotation(parse_pauli("Z"), 0.3)};
  EXPECT_THROW(expand_constant_depth(s, 1), std::invalid_argument);
  EXPECT_THROW(expand_constant_depth(CliffordCircuit{CliffordGate::cx(0, 3)}, 2), std::invalid_argument);
}

TEST(Expansion, CorrectionArity) {
  CliffordCircuit c{CliffordGate::cx(0, 1), CliffordGate::cx(1, 0)};
  auto ex = expand_constant_depth(c, 2);
  EXPECT_THROW(ex.correction({1}), std::invalid_argument);
}

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

#include "mbqc/hybrid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "common.hpp"
#include "mbqc/annealer.hpp"
#include "mbqc/fixtures.hpp"

using namespace mbqc;

namespace {

struct Instance {
  StandardFormPattern pattern;
  StateVector ideal;
};

Instance random_instance(std::size_t n, std::size_t m, Layout layout, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::vector<PauliRotation> rots;
  for (std::size_t i = 0; i < m; ++i) rots.emplace_back(fixture_gen::random_pauli(n, rng, false), angle(rng));
  auto init = fixture_gen::random_clifford(n, 6, rng);
  auto p = to_graph_form(compile(rots, layout, init));
  StateVector s(n);
  s.apply(init);
  for (const auto& r : rots) s.apply_rotation(r);
  return {std::move(p), std::move(s)};
}

std::vector<Qubit> all_qubits(std::size_t n) {
  std::vector<Qubit> q(n);
  for (Qubit i = 0; i < n; ++i) q[i] = i;
  return q;
}

}  // namespace

TEST(SimulateMain, ParallelPairHasTwoMainOutcomes) {
  auto p = to_graph_form(compile({PauliRotation(parse_pauli("YY"), 0.4), PauliRotation(parse_pauli("XX"), 0.9)},
                                 Layout::StarAncilla));
  std::set<std::string> seen;
  std::vector<GraphRegister> states;
  for (std::uint64_t s = 0; s < 64; ++s) {
    Rng rng(s);
    auto r = simulate_main(p, rng);
    if (seen.insert(r.main_bits).second) states.push_back(r.ancilla_state);
    EXPECT_EQ(r.ancilla_state.size(), 2u);
  }
  EXPECT_EQ(seen.size(), 2u);
  ASSERT_EQ(states.size(), 2u);
  EXPECT_TRUE(lc_equivalent(states[0], states[1]));
}

TEST(SimulateMain, NoRotations) {
  StandardFormPattern p;
  p.main_qubits = 2;
  p.output_wires = {0, 1};
  p.initial = {CliffordGate::x(1)};
  p = to_graph_form(p);
  Rng rng(1);
  auto r = simulate_main(p, rng);
  EXPECT_EQ(r.ancilla_state.size(), 0u);
  EXPECT_EQ(r.main_bits, "10");
  EXPECT_EQ(execute(p, 10, 1), (Counts{{"10", 10}}));
}

TEST(SimulateMain, RequiresGraphForm) {
  auto p = compile({PauliRotation(parse_pauli("Z"), 0.4)}, Layout::Star);
  Rng rng(1);
  EXPECT_THROW(simulate_main(p, rng), std::invalid_argument);
  auto g = to_graph_form(p);
  g.graph->output_bases[0] = Pauli::I;
  EXPECT_THROW(simulate_main(g, rng), std::invalid_argument);
}

TEST(SimulateMain, BranchAncillaStatesAreLocallyEquivalent) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_instance(3, 4, trial % 2 ? Layout::Star : Layout::StarAncilla, rng);
    std::map<std::string, GraphRegister> by_main;
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng r(s);
      auto rec = simulate_main(inst.pattern, r);
      by_main.emplace(rec.main_bits, rec.ancilla_state);
    }
    const auto& first = by_main.begin()->second;
    for (const auto& [_, g] : by_main) EXPECT_TRUE(lc_equivalent(first, g));
  }
}

TEST(Execute, IdentityPatternReproducesInput) {
  auto p = to_graph_form(compile({PauliRotation(parse_pauli("YY"), 0.0), PauliRotation(parse_pauli("XX"), 0.0)},
                                 Layout::StarAncilla));
  EXPECT_EQ(execute(p, 2000, 5), (Counts{{"00", 2000}}));
}

TEST(Execute, MatchesDenseDistribution) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t n = 1 + trial % 3, m = 1 + trial % 4;
    auto inst = random_instance(n, m, trial % 2 ? Layout::Star : Layout::StarAncilla, rng);
    auto ideal = to_distribution(inst.ideal, all_qubits(n));
    auto got = to_distribution(execute(inst.pattern, 100000, trial));
    EXPECT_LE(total_variation(ideal, got), 0.02) << trial;
    try {
      EXPECT_GE(hellinger_normalized(ideal, got, n), 0.999) << trial;
    } catch (const std::domain_error&) {
      // uniform ideal: only the distance check applies
    }
  }
}

TEST(Execute, DeterministicAndThreadIndependent) {
  std::mt19937_64 rng(4);
  auto inst = random_instance(3, 3, Layout::Star, rng);
  auto a = execute(inst.pattern, 3000, 77, 1);
  auto b = execute(inst.pattern, 3000, 77, 3);
  EXPECT_EQ(a, b);
  DenseBackend be;
  const auto local = detail::local_instructions(inst.pattern);
  auto r1 = run_shot(inst.pattern, local, be, 5, 9), r2 = run_shot(inst.pattern, local, be, 5, 9);
  EXPECT_EQ(r1.main_bits, r2.main_bits);
  EXPECT_EQ(r1.ancilla_bits, r2.ancilla_bits);
  EXPECT_EQ(r1.corrected_bits, r2.corrected_bits);
  EXPECT_THROW(execute(inst.pattern, 0, 1), std::invalid_argument);
}

TEST(Execute, CorrectionsOnlyFlipXYParts) {
  std::mt19937_64 rng(8);
  auto inst = random_instance(3, 4, Layout::Star, rng);
  DenseBackend be;
  const auto local = detail::local_instructions(inst.pattern);
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto r = run_shot(inst.pattern, local, be, 1, i);
    for (Qubit q = 0; q < 3; ++q) {
      bool flip = false;
      for (auto [m, c] : r.correction_map[q]) flip ^= r.ancilla_bits[m] && (c == Pauli::X || c == Pauli::Y);
      EXPECT_EQ(r.corrected_bits[2 - q] != r.main_bits[2 - q], flip);
    }
  }
}

TEST(Execute, BackendCapacity) {
  std::mt19937_64 rng(2);
  auto inst = random_instance(2, 4, Layout::Star, rng);
  DenseBackend small(2);
  EXPECT_THROW(execute(inst.pattern, 1, 1, small), CapacityError);
}

TEST(Execute, QaoaArgmax) {
  auto p = to_graph_form(compile(fixtures::qaoa_rotations(), Layout::Star, fixtures::plus_state(4)));
  auto counts = execute(p, 20000, 2024);
  std::vector<std::pair<std::uint64_t, std::string>> v;
  for (const auto& [k, c] : counts) v.push_back({c, k});
  std::sort(v.rbegin(), v.rend());
  EXPECT_EQ((std::set<std::string>{v[0].second, v[1].second}), (std::set<std::string>{"0100", "1011"}));
}

TEST(Expectation, TrivialAndErrors) {
  auto p = to_graph_form(compile({PauliRotation(parse_pauli("Z"), 0.4)}, Layout::Star));
  Hamiltonian z;
  z.add(1.0, parse_pauli("Z"));
  auto e = expectation(p, z, 500, 3);
  EXPECT_DOUBLE_EQ(e.value, 1.0);
  EXPECT_DOUBLE_EQ(e.standard_error, 0.0);
  Hamiltonian x;
  x.add(1.0, parse_pauli("X"));
  EXPECT_THROW(expectation(p, x, 10, 1), std::invalid_argument);
}

TEST(Expectation, StandardErrorMatchesBinomial) {
  Hamiltonian z;
  z.add(1.0, parse_pauli("Z"));
  auto e = estimate_from_counts(z, {{"0", 750}, {"1", 250}});
  EXPECT_DOUBLE_EQ(e.value, 0.5);
  EXPECT_NEAR(e.standard_error, std::sqrt(0.75 * 1000.0 / 999.0 / 1000.0), 1e-12);
}

TEST(Hellinger, Normalized) {
  Distribution p{{"00", 0.5}, {"11", 0.5}};
  Distribution u{{"00", 0.25}, {"01", 0.25}, {"10", 0.25}, {"11", 0.25}};
  EXPECT_NEAR(hellinger_normalized(p, p, 2), 1.0, 1e-12);
  EXPECT_NEAR(hellinger_normalized(p, u, 2), 0.0, 1e-12);
  EXPECT_NEAR(hellinger_fidelity(p, Distribution{{"00", 1.0}}), 0.5, 1e-12);
  EXPECT_THROW(hellinger_normalized(p, Distribution{{"00", 0.7}}, 2), std::invalid_argument);
  EXPECT_THROW(hellinger_normalized(u, p, 2), std::domain_error);
  EXPECT_NEAR(total_variation(p, u), 0.5, 1e-12);
}

TEST(AncillaDecomposition, EqualsDirectExpectation) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 1 + trial % 3, m = 1 + trial % 4;
    auto inst = random_instance(n, m, trial % 2 ? Layout::Star : Layout::StarAncilla, rng);
    PauliString zq(n);
    for (Qubit q = 0; q < n; ++q)
      if (rng() & 1) zq.set(q, Pauli::Z);
    auto d = ancilla_decomposition(inst.pattern, zq);
    EXPECT_TRUE(d.equal_weights);
    EXPECT_NEAR(d.value, inst.ideal.expectation(zq), 1e-9) << trial;
  }
}

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

#include "mbqc/dense.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mbqc;

TEST(Bitstring, QubitZeroIsRightmost) {
  EXPECT_EQ(bitstring(1, 4), "0001");
  EXPECT_EQ(bitstring(0b1010, 4), "1010");
  EXPECT_EQ(parse_bitstring("0100"), 4u);
}

TEST(StateVector, BellState) {
  StateVector s(2);
  s.apply(CliffordGate::h(0));
  s.apply(CliffordGate::cx(0, 1));
  EXPECT_NEAR(s.probability(0, 1), 0.5, 1e-12);
  EXPECT_NEAR(s.expectation(parse_pauli("ZZ")), 1.0, 1e-12);
  EXPECT_NEAR(s.expectation(parse_pauli("XX")), 1.0, 1e-12);
  EXPECT_NEAR(s.expectation(parse_pauli("YY")), -1.0, 1e-12);
}

TEST(StateVector, RotationMatchesRz) {
  StateVector a(1), b(1);
  a.apply(CliffordGate::h(0));
  b.apply(CliffordGate::h(0));
  a.apply_rz(0, 0.7);
  b.apply_rotation(parse_pauli("Z"), 0.7);
  EXPECT_NEAR(std::abs(a.inner(b) - Complex(1.0)), 0.0, 1e-12);
}

TEST(StateVector, CapacityLimit) {
  EXPECT_THROW(StateVector(30), CapacityError);
  EXPECT_THROW(StateVector(5, 0, 4), CapacityError);
}

TEST(StateVector, ProjectAndExtract) {
  StateVector s(3);
  s.apply(CliffordGate::h(0));
  s.apply(CliffordGate::cx(0, 2));
  double p = s.project(0, 1);
  EXPECT_NEAR(p, 0.5, 1e-12);
  s.normalize();
  std::vector<Qubit> keep{2};
  auto r = s.extract(keep, 0b001);
  EXPECT_EQ(r.num_qubits(), 1u);
  EXPECT_NEAR(r.probability(0, 1), 1.0, 1e-12);
}

TEST(StateVector, MeasurementStatistics) {
  std::mt19937_64 rng(3);
  int ones = 0;
  const int shots = 4000;
  for (int i = 0; i < shots; ++i) {
    StateVector s(1);
    s.apply_1q(0, mat2::rz(0.0));
    s.apply(CliffordGate::h(0));
    s.apply_rotation(parse_pauli("Y"), 0.4);
    ones += s.measure(0, rng);
  }
  double expect = 0.5 * (1 + std::sin(0.4));
  EXPECT_NEAR(ones / double(shots), expect, 4 * std::sqrt(expect * (1 - expect) / shots));
}

TEST(BranchEnumerate, ProbabilitiesSumToOne) {
  StateVector s(3);
  for (Qubit q = 0; q < 3; ++q) s.apply(CliffordGate::h(q));
  s.apply_rotation(parse_pauli("XZY"), 0.3);
  std::vector<Qubit> m{0, 2};
  auto br = branch_enumerate(s, m);
  double tot = 0;
  for (auto& b : br) tot += b.probability;
  EXPECT_NEAR(tot, 1.0, 1e-12);
}

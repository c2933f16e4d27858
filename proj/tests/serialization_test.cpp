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

#include "mbqc/serialization.hpp"

#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "mbqc/fixtures.hpp"
#include "mbqc/hybrid.hpp"

using namespace mbqc;

TEST(Serialization, PatternRoundTrip) {
  std::mt19937_64 rng(3);
  for (Layout lay : {Layout::Star, Layout::StarAncilla}) {
    auto p = compile(fixtures::qaoa_rotations(), lay, fixtures::plus_state(4));
    auto g = to_graph_form(p);
    for (const auto* src : {&p, &g}) {
      auto text = to_json(*src).dump();
      auto back = pattern_from_json(Json::parse(text));
      EXPECT_EQ(to_json(back).dump(), text);
      EXPECT_EQ(back.clifford_part, src->clifford_part);
      EXPECT_EQ(back.graph.has_value(), src->graph.has_value());
      if (back.graph) {
        EXPECT_TRUE(back.graph->graph == src->graph->graph);
      }
    }
    EXPECT_EQ(execute(pattern_from_json(to_json(g)), 500, 9), execute(g, 500, 9));
  }
}

TEST(Serialization, AnglesKeepFullPrecision) {
  auto p = compile({PauliRotation(parse_pauli("XZ"), 0.1 + 1e-15)}, Layout::Star);
  auto back = pattern_from_json(Json::parse(to_json(p).dump()));
  EXPECT_EQ(back.measurements[0].base_angle, p.measurements[0].base_angle);
}

TEST(Serialization, CircuitSpec) {
  auto j = Json::parse(R"({"num_qubits": 2,
    "initial": [{"gate": "h", "qubits": [0]}],
    "exponentials": [{"pauli": "ZZ", "angle": 0.5}, {"gate": "CX", "qubits": [0, 1]}, {"pauli": "XI", "angle": -1}]})");
  auto s = circuit_spec_from_json(j);
  EXPECT_EQ(s.num_qubits, 2u);
  ASSERT_EQ(s.steps.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<CliffordGate>(s.steps[1]));
  EXPECT_EQ(circuit_spec_from_json(to_json(s)).steps.size(), 3u);
}

TEST(Serialization, SchemaErrors) {
  EXPECT_THROW(circuit_spec_from_json(Json::parse(R"({"exponentials": []})")), SchemaError);
  EXPECT_THROW(circuit_spec_from_json(Json::parse(R"({"num_qubits": 2, "exponentials": [{"pauli": "ZZZ", "angle": 1}]})")),
               SchemaError);
  EXPECT_THROW(circuit_spec_from_json(Json::parse(R"({"num_qubits": 2, "exponentials": [{"pauli": "II", "angle": 1}]})")),
               SchemaError);
  EXPECT_THROW(circuit_spec_from_json(Json::parse(R"({"num_qubits": 2, "exponentials": [{"gate": "T", "qubits": [0]}]})")),
               SchemaError);
  EXPECT_THROW(circuit_spec_from_json(Json::parse(R"({"num_qubits": 2, "exponentials": [{"gate": "CX", "qubits": [0, 2]}]})")),
               SchemaError);
  auto good = to_json(compile({PauliRotation(parse_pauli("ZZ"), 0.3)}, Layout::Star));
  auto bad = good;
  bad["version"] = 7;
  EXPECT_THROW(pattern_from_json(bad), SchemaError);
  bad = good;
  bad["measurements"][0]["adapt_set"] = {3};
  EXPECT_THROW(pattern_from_json(bad), SchemaError);
  bad = good;
  bad.erase("corrections");
  EXPECT_THROW(pattern_from_json(bad), SchemaError);
}

TEST(Serialization, Counts) {
  Counts c{{"01", 3}, {"10", 5}};
  EXPECT_EQ(counts_from_json(to_json(c)), c);
  EXPECT_THROW(counts_from_json(Json::parse(R"({"0a": 1})")), SchemaError);
  EXPECT_THROW(counts_from_json(Json::parse(R"({"01": 1, "1": 2})")), SchemaError);
  EXPECT_THROW(counts_from_json(Json::parse(R"({"01": -1})")), SchemaError);
}

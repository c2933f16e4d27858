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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mbqc/annealer.hpp"
#include "mbqc/hamiltonian.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

using Json = nlohmann::ordered_json;

/// Malformed or unsupported input document.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kPatternFormatVersion = 1;

namespace detail {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

inline PauliString pauli_field(const Json& j, const char* key, std::size_t n) {
  auto text = field<std::string>(j, key);
  try {
    return parse_pauli(text, n);
  } catch (const PauliError& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

inline void check_qubit(std::uint64_t q, std::size_t n) {
  if (q >= n) throw SchemaError("qubit index " + std::to_string(q) + " out of range");
}

}  // namespace detail

inline Json to_json(const CliffordGate& g) {
  Json j;
  j["gate"] = gate_name(g.kind);
  j["qubits"] = g.two_qubit() ? Json::array({g.a, g.b}) : Json::array({g.a});
  return j;
}

inline CliffordGate gate_from_json(const Json& j, std::size_t n) {
  auto name = detail::field<std::string>(j, "gate");
  auto kind = gate_kind_from_name(name);
  if (!kind) throw SchemaError("unknown gate '" + name + "'");
  auto qs = detail::field<std::vector<std::uint64_t>>(j, "qubits");
  CliffordGate g{*kind, 0, 0};
  if (qs.size() != (g.two_qubit() ? 2u : 1u)) throw SchemaError("gate " + name + " has the wrong number of qubits");
  for (auto q : qs) detail::check_qubit(q, n);
  if (g.two_qubit() && qs[0] == qs[1]) throw SchemaError("two-qubit gate needs distinct qubits");
  g.a = static_cast<Qubit>(qs[0]);
  if (g.two_qubit()) g.b = static_cast<Qubit>(qs[1]);
  return g;
}

inline Json to_json(const CliffordCircuit& c) {
  Json a = Json::array();
  for (const auto& g : c) a.push_back(to_json(g));
  return a;
}

inline CliffordCircuit circuit_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw SchemaError("expected a gate list");
  CliffordCircuit c;
  for (const auto& g : j) c.push_back(gate_from_json(g, n));
  return c;
}

inline Json to_json(const PauliRotation& r) { return Json{{"pauli", format_pauli(r.string())}, {"angle", r.angle()}}; }

/// Circuit input: {num_qubits, initial: [gate...], exponentials: [{pauli,
/// angle} | gate...]}. Gates inside `exponentials` are interleaved Cliffords.
struct CircuitSpec {
  std::size_t num_qubits = 0;
  CliffordCircuit initial;
  std::vector<Step> steps;
};

inline CircuitSpec circuit_spec_from_json(const Json& j) {
  CircuitSpec s;
  s.num_qubits = detail::field<std::size_t>(j, "num_qubits");
  if (s.num_qubits == 0) throw SchemaError("num_qubits must be positive");
  if (j.contains("initial")) s.initial = circuit_from_json(j.at("initial"), s.num_qubits);
  const auto& ex = j.contains("exponentials") ? j.at("exponentials") : throw SchemaError("missing field 'exponentials'");
  if (!ex.is_array()) throw SchemaError("'exponentials' must be a list");
  for (const auto& e : ex) {
    if (e.is_object() && e.contains("gate")) {
      s.steps.push_back(gate_from_json(e, s.num_qubits));
      continue;
    }
    auto p = detail::pauli_field(e, "pauli", s.num_qubits);
    try {
      s.steps.push_back(PauliRotation(p, detail::field<double>(e, "angle")));
    } catch (const PauliError& err) {
      throw SchemaError(err.what());
    }
  }
  return s;
}

inline Json to_json(const CircuitSpec& s) {
  Json ex = Json::array();
  for (const auto& st : s.steps)
    ex.push_back(std::holds_alternative<PauliRotation>(st) ? to_json(std::get<PauliRotation>(st))
                                                           : to_json(std::get<CliffordGate>(st)));
  return Json{{"num_qubits", s.num_qubits}, {"initial", to_json(s.initial)}, {"exponentials", ex}};
}

inline Json to_json(const GraphRegister& g) {
  Json edges = Json::array(), vops = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  for (Qubit v = 0; v < g.size(); ++v) vops.push_back(g.vop(v));
  return Json{{"num_qubits", g.size()}, {"edges", edges}, {"vops", vops}};
}

inline GraphRegister graph_from_json(const Json& j) {
  const auto n = detail::field<std::size_t>(j, "num_qubits");
  GraphRegister g = GraphRegister::plus_state(n);
  for (const auto& e : detail::field<std::vector<std::vector<std::uint64_t>>>(j, "edges")) {
    if (e.size() != 2 || e[0] == e[1]) throw SchemaError("malformed edge");
    detail::check_qubit(e[0], n);
    detail::check_qubit(e[1], n);
    if (g.has_edge(static_cast<Qubit>(e[0]), static_cast<Qubit>(e[1]))) throw SchemaError("duplicate edge");
    g.add_edge(static_cast<Qubit>(e[0]), static_cast<Qubit>(e[1]));
  }
  auto vops = detail::field<std::vector<unsigned>>(j, "vops");
  if (vops.size() != n) throw SchemaError("one vop per vertex expected");
  for (Qubit v = 0; v < n; ++v) {
    if (vops[v] >= 24) throw SchemaError("vop index out of range");
    g.set_vop(v, static_cast<LocalClifford>(vops[v]));
  }
  return g;
}

inline Json to_json(const StandardFormPattern& p) {
  Json j;
  j["format"] = "mbqc-pattern";
  j["version"] = kPatternFormatVersion;
  j["main_qubits"] = p.main_qubits;
  j["ancillas"] = p.ancilla_qubits;
  j["layout"] = layout_name(p.layout);
  j["initial"] = to_json(p.initial);
  j["clifford_gates"] = to_json(p.clifford_part);
  j["output_wires"] = p.output_wires;
  Json ms = Json::array();
  for (const auto& m : p.measurements)
    ms.push_back(Json{{"target", m.target}, {"base_angle", m.base_angle}, {"adapt_set", m.adapt_set}});
  j["measurements"] = ms;
  Json cs = Json::array();
  for (const auto& c : p.corrections) cs.push_back(Json{{"control", c.control}, {"pauli", format_pauli(c.pauli)}});
  j["corrections"] = cs;
  Json gs = Json::array();
  for (const auto& g : p.generators) gs.push_back(to_json(g));
  j["generators"] = gs;
  if (p.graph) {
    Json g = to_json(p.graph->graph);
    std::string bases;
    for (Pauli b : p.graph->output_bases) bases.push_back(pauli_char(b));
    g["output_bases"] = bases;
    j["graph"] = g;
  }
  return j;
}

inline StandardFormPattern pattern_from_json(const Json& j) {
  if (detail::field<std::string>(j, "format") != "mbqc-pattern") throw SchemaError("not a pattern document");
  if (detail::field<int>(j, "version") != kPatternFormatVersion) throw SchemaError("unsupported pattern version");
  StandardFormPattern p;
  p.main_qubits = detail::field<std::size_t>(j, "main_qubits");
  p.ancilla_qubits = detail::field<std::size_t>(j, "ancillas");
  const std::size_t n = p.main_qubits, total = p.total_qubits();
  try {
    p.layout = layout_from_name(detail::field<std::string>(j, "layout"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  p.initial = circuit_from_json(j.at("initial"), n);
  p.clifford_part = circuit_from_json(detail::field<Json>(j, "clifford_gates"), total);
  for (auto w : detail::field<std::vector<std::uint64_t>>(j, "output_wires")) {
    detail::check_qubit(w, total);
    p.output_wires.push_back(static_cast<Qubit>(w));
  }
  if (p.output_wires.size() != n) throw SchemaError("one output wire per main qubit expected");
  for (const auto& m : detail::field<Json>(j, "measurements")) {
    MeasurementInstruction mi;
    auto t = detail::field<std::uint64_t>(m, "target");
    detail::check_qubit(t, total);
    mi.target = static_cast<Qubit>(t);
    mi.base_angle = detail::field<double>(m, "base_angle");
    mi.adapt_set = detail::field<std::vector<std::size_t>>(m, "adapt_set");
    for (auto k : mi.adapt_set)
      if (k >= p.measurements.size()) throw SchemaError("adapt_set must reference earlier measurements");
    p.measurements.push_back(std::move(mi));
  }
  for (const auto& c : detail::field<Json>(j, "corrections")) {
    auto ctl = detail::field<std::size_t>(c, "control");
    if (ctl >= p.measurements.size()) throw SchemaError("correction control out of range");
    p.corrections.push_back({ctl, detail::pauli_field(c, "pauli", n)});
  }
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) {
      try {
        p.generators.emplace_back(detail::pauli_field(g, "pauli", n), detail::field<double>(g, "angle"));
      } catch (const PauliError& e) {
        throw SchemaError(e.what());
      }
    }
  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    GraphForm gf{graph_from_json(g), {}};
    if (gf.graph.size() != total) throw SchemaError("graph size does not match the pattern");
    auto bases = detail::field<std::string>(g, "output_bases");
    if (bases.size() != n) throw SchemaError("one output basis per main qubit expected");
    for (char c : bases) {
      if (c != 'X' && c != 'Y' && c != 'Z') throw SchemaError("output basis must be X, Y or Z");
      gf.output_bases.push_back(parse_pauli(std::string(1, c)).get(0));
    }
    p.graph = std::move(gf);
  }
  return p;
}

inline Json to_json(const Counts& counts) {
  Json j = Json::object();
  for (const auto& [k, v] : counts) j[k] = v;
  return j;
}

inline Counts counts_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("counts must be an object");
  Counts c;
  std::size_t width = 0;
  for (const auto& [k, v] : j.items()) {
    if (k.empty() || k.find_first_not_of("01") != std::string::npos) throw SchemaError("bad bitstring '" + k + "'");
    if (width && k.size() != width) throw SchemaError("bitstrings of different length");
    width = k.size();
    if (!v.is_number_unsigned()) throw SchemaError("counts must be non-negative integers");
    c[k] = v.get<std::uint64_t>();
  }
  return c;
}

inline Json to_json(const AnnealResult& r, const CostFunction& cost, const Schedule& s) {
  return Json{{"cost", cost.name()},
              {"t0", s.t0},
              {"cooling", s.cooling},
              {"steps", s.steps},
              {"seed", r.seed},
              {"initial_cost", r.initial_cost},
              {"best_cost", r.best_cost},
              {"accepted", r.accepted},
              {"best_trace", r.best_trace},
              {"current_trace", r.current_trace}};
}

}  // namespace mbqc

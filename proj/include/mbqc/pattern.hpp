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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/graph_register.hpp"
#include "mbqc/hamiltonian.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

enum class Layout { Star, StarAncilla };

inline std::string layout_name(Layout l) { return l == Layout::Star ? "star" : "star_ancilla"; }
inline Layout layout_from_name(const std::string& s) {
  if (s == "star") return Layout::Star;
  if (s == "star_ancilla" || s == "star-ancilla" || s == "star+ancilla") return Layout::StarAncilla;
  throw std::invalid_argument("unknown layout '" + s + "'");
}

/// Measurement of `target` in the M(theta) basis: apply Rz(-theta_eff), then
/// H, then measure Z. theta_eff = (-1)^h base_angle with h the parity of the
/// outcomes listed in adapt_set.
struct MeasurementInstruction {
  Qubit target = 0;
  double base_angle = 0;
  std::vector<std::size_t> adapt_set;
};

/// pauli^(s_control) on the main register, applied after all measurements.
struct CorrectionTerm {
  std::size_t control = 0;
  PauliString pauli;
};

/// Clifford part simulated down to a stabilizer state.
struct GraphForm {
  GraphRegister graph;
  std::vector<Pauli> output_bases;
};

struct StandardFormPattern {
  std::size_t main_qubits = 0;
  std::size_t ancilla_qubits = 0;
  Layout layout = Layout::Star;
  CliffordCircuit initial;        ///< on wires 0..main-1, from |0..0>
  CliffordCircuit clifford_part;  ///< on all wires, ancillas start in |0>
  std::vector<MeasurementInstruction> measurements;
  std::vector<CorrectionTerm> corrections;
  std::vector<PauliRotation> generators;  ///< one per measurement
  std::vector<Qubit> output_wires;        ///< wire carrying main qubit q at the end
  std::optional<GraphForm> graph;

  std::size_t total_qubits() const { return main_qubits + ancilla_qubits; }

  std::vector<Qubit> targets() const {
    std::vector<Qubit> t;
    for (const auto& m : measurements) t.push_back(m.target);
    return t;
  }
};

using Step = std::variant<PauliRotation, CliffordGate>;

// ---------------------------------------------------------------------------
// Scheduling

namespace detail {

enum class WireAction { Diagonal, Flip, Other };

inline WireAction wire_action(const CliffordGate& g, Qubit q) {
  switch (g.kind) {
    case GateKind::S: case GateKind::Sdg: case GateKind::Z: case GateKind::CZ: return WireAction::Diagonal;
    case GateKind::X: return WireAction::Flip;
    case GateKind::CX: return q == g.a ? WireAction::Diagonal : WireAction::Flip;
    default: return WireAction::Other;
  }
}

inline std::vector<Qubit> wires_of(const CliffordGate& g) {
  if (g.two_qubit()) return {g.a, g.b};
  return {g.a};
}

/// Gates commute when on every shared wire both act diagonally or both act
/// as X-type flips.
inline bool gates_commute(const CliffordGate& g, const CliffordGate& h) {
  for (Qubit q : wires_of(g)) {
    bool shared = q == h.a || (h.two_qubit() && q == h.b);
    if (!shared) continue;
    auto a = wire_action(g, q), b = wire_action(h, q);
    if (a != b || a == WireAction::Other) return false;
  }
  return true;
}

}  // namespace detail

struct ScheduledCircuit {
  CliffordCircuit circuit;        ///< reordered, same unitary
  std::size_t entangling_layers = 0;
  std::size_t two_qubit_gates = 0;
};

/// Greedy ASAP layering of two-qubit gates. With `commute_aware`, a gate only
/// waits for earlier gates it does not commute with; otherwise for every
/// earlier gate on a shared wire. The output is a reordering that keeps every
/// non-commuting pair in its original order.
inline ScheduledCircuit schedule(const CliffordCircuit& c, bool commute_aware = true) {
  const std::size_t G = c.size();
  std::vector<std::size_t> key(G, 0);
  std::map<Qubit, std::vector<std::size_t>> history;
  std::map<Qubit, std::set<std::size_t>> busy;
  ScheduledCircuit out;
  for (std::size_t i = 0; i < G; ++i) {
    const auto& g = c[i];
    std::size_t need = 0;
    std::set<std::size_t> seen;
    for (Qubit q : detail::wires_of(g))
      for (std::size_t h : history[q]) {
        if (!seen.insert(h).second) continue;
        if (commute_aware && detail::gates_commute(g, c[h])) continue;
        need = std::max(need, key[h]);
      }
    if (g.two_qubit()) {
      std::size_t layer = need + 1;
      while (busy[g.a].count(layer) || busy[g.b].count(layer)) ++layer;
      busy[g.a].insert(layer);
      busy[g.b].insert(layer);
      key[i] = layer;
      ++out.two_qubit_gates;
    } else {
      key[i] = need;
    }
    for (Qubit q : detail::wires_of(g)) history[q].push_back(i);
  }
  std::vector<std::size_t> order(G);
  for (std::size_t i = 0; i < G; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return key[a] < key[b]; });
  std::set<std::size_t> layers;
  for (std::size_t i : order) {
    out.circuit.push_back(c[i]);
    if (c[i].two_qubit()) layers.insert(key[i]);
  }
  out.entangling_layers = layers.size();
  return out;
}

// ---------------------------------------------------------------------------
// Grouping

/// Each rotation joins the earliest group g such that it commutes with every
/// member of groups g..last; otherwise it opens a new group. Returns input
/// indices per group.
inline std::vector<std::vector<std::size_t>> group_commuting_indices(const std::vector<PauliRotation>& rots) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rots.size(); ++i) {
    std::size_t slot = groups.size();
    for (std::size_t g = groups.size(); g-- > 0;) {
      bool ok = std::all_of(groups[g].begin(), groups[g].end(),
                            [&](std::size_t j) { return commutes(rots[i].string(), rots[j].string()); });
      if (!ok) break;
      slot = g;
    }
    if (slot == groups.size()) groups.emplace_back();
    groups[slot].push_back(i);
  }
  return groups;
}

inline std::vector<std::vector<PauliRotation>> group_commuting(const std::vector<PauliRotation>& rots) {
  std::vector<std::vector<PauliRotation>> out;
  for (const auto& g : group_commuting_indices(rots)) {
    out.emplace_back();
    for (auto i : g) out.back().push_back(rots[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compilation

struct CompileOptions {
  bool optimize_depth = true;  ///< try several synthesis strategies, keep the shallowest
  bool schedule = true;        ///< emit clifford_part in layered order
};

/// One way of synthesizing the parity network of a commuting run.
struct SynthesisStrategy {
  DiagonalizeOptions diagonalize;
  std::size_t max_carriers = 1;  ///< Star only: qubits that may hold parities at once
  bool balance = false;          ///< prefer carriers with shorter gadget chains
  bool reorder = true;           ///< order rotations to share parity updates
};

namespace detail {

class Emitter {
 public:
  explicit Emitter(std::size_t wires) : pending_(wires, false), next_(static_cast<Qubit>(wires)) {}

  Qubit fresh() {
    pending_.push_back(false);
    return next_++;
  }
  std::size_t wire_count() const { return next_; }

  void flush(Qubit w) {
    if (pending_[w]) {
      out_.push_back(CliffordGate::h(w));
      pending_[w] = false;
    }
  }
  void owe_h(Qubit w) { pending_[w] = true; }

  /// A CX into a wire that still owes an H becomes a CZ emitted before it.
  void gate(const CliffordGate& g) {
    if (g.kind == GateKind::CX && pending_[g.b]) {
      flush(g.a);
      out_.push_back(CliffordGate::cz(g.a, g.b));
      return;
    }
    flush(g.a);
    if (g.two_qubit()) flush(g.b);
    out_.push_back(g);
  }
  void raw(const CliffordGate& g) { out_.push_back(g); }

  CliffordCircuit take() { return std::move(out_); }

 private:
  std::vector<bool> pending_;
  Qubit next_;
  CliffordCircuit out_;
};

inline CliffordGate remap(CliffordGate g, const std::vector<Qubit>& wire) {
  g.a = wire[g.a];
  if (g.two_qubit()) g.b = wire[g.b];
  return g;
}

struct FrameRotation {
  PauliString string;  ///< phase-free, in the frame before the trailing Cliffords
  double angle;
  std::size_t source;  ///< index among the input rotations
};

using Bits = std::vector<bool>;

inline Bits bits_xor(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] != b[i];
  return r;
}

inline std::size_t bits_count(const Bits& a) { return static_cast<std::size_t>(std::count(a.begin(), a.end(), true)); }

inline StandardFormPattern compile_with(const std::vector<Step>& steps, std::size_t n, Layout layout,
                                        const CliffordCircuit& initial, const SynthesisStrategy& strat,
                                        bool do_schedule) {
  if (n == 0) throw std::invalid_argument("compile needs at least one main qubit");
  for (const auto& g : initial)
    if (g.max_qubit() >= n) throw std::invalid_argument("initial circuit exceeds register size");

  // Move Clifford gates behind every rotation: exp(-i t/2 P) F = F exp(-i t/2 F^dag P F).
  CliffordCircuit frame;
  std::vector<FrameRotation> rots;
  std::vector<PauliRotation> originals;
  for (const auto& step : steps) {
    if (const auto* g = std::get_if<CliffordGate>(&step)) {
      if (g->max_qubit() >= n) throw std::invalid_argument("clifford gate exceeds register size");
      frame.push_back(*g);
      continue;
    }
    const auto& r = std::get<PauliRotation>(step);
    if (r.string().size() != n)
      throw std::invalid_argument("rotation " + format_pauli(r.string()) + " does not match register size " +
                                  std::to_string(n));
    PauliString p = conjugate(inverse(frame), r.string());
    double angle = r.angle() * p.sign();
    p.set_phase_exponent(0);
    rots.push_back({std::move(p), angle, originals.size()});
    originals.push_back(r);
  }

  // Maximal runs of consecutive mutually commuting rotations.
  std::vector<std::vector<std::size_t>> runs;
  for (std::size_t i = 0; i < rots.size(); ++i) {
    bool joins = !runs.empty() && std::all_of(runs.back().begin(), runs.back().end(), [&](std::size_t j) {
      return commutes(rots[i].string, rots[j].string);
    });
    if (!joins) runs.emplace_back();
    runs.back().push_back(i);
  }

  StandardFormPattern pat;
  pat.main_qubits = n;
  pat.layout = layout;
  pat.initial = initial;

  Emitter em(n);
  // logical slots: main qubits, plus the parity wire for StarAncilla
  const bool ancilla = layout == Layout::StarAncilla;
  const std::size_t slots = ancilla ? n + 1 : n;
  std::vector<Qubit> wire(n);
  for (Qubit q = 0; q < n; ++q) wire[q] = q;
  if (ancilla) wire.push_back(em.fresh());

  std::vector<PauliString> frame_strings;
  auto emit_logical = [&](const CliffordGate& g) { em.gate(remap(g, wire)); };

  for (const auto& run : runs) {
    CommutingGroup grp;
    for (auto i : run) grp.members.push_back({1.0, rots[i].string});
    diagonalize(grp, strat.diagonalize);
    for (const auto& g : grp.diagonalizer) emit_logical(g);

    // Parity held by each slot, as a set of main qubits.
    std::vector<Bits> held(slots, Bits(n, false));
    auto home = [&](std::size_t s) {
      Bits b(n, false);
      if (s < n) b[s] = true;
      return b;
    };
    for (std::size_t s = 0; s < n; ++s) held[s] = home(s);
    auto at_home = [&](std::size_t s) { return held[s] == home(s); };
    std::vector<std::size_t> chain(slots, 0);
    std::vector<bool> carrier(slots, false);
    std::size_t carriers = 0;

    auto restore_all = [&]() {
      for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t w = 0; w < slots; ++w) {
          if (at_home(w)) continue;
          Bits diff = bits_xor(held[w], home(w));
          bool ready = true;
          for (Qubit q = 0; q < n; ++q)
            if (diff[q] && !at_home(q)) ready = false;
          if (!ready) continue;
          for (Qubit q = 0; q < n; ++q)
            if (diff[q]) emit_logical(CliffordGate::cx(q, static_cast<Qubit>(w)));
          held[w] = home(w);
          progress = true;
        }
      }
      for (std::size_t w = 0; w < slots; ++w)
        if (!at_home(w)) throw std::logic_error("parity network cannot be unwound");
      std::fill(carrier.begin(), carrier.end(), false);
      carriers = 0;
    };

    std::vector<Bits> supp(run.size(), Bits(n, false));
    for (std::size_t k = 0; k < run.size(); ++k)
      for (Qubit q : grp.z_images[k].support()) supp[k][q] = true;

    std::vector<bool> done(run.size(), false);
    for (std::size_t step = 0; step < run.size(); ++step) {
      std::size_t best_k = run.size(), best_w = 0, best_cost = 0;
      for (int attempt = 0; attempt < 2 && best_k == run.size(); ++attempt) {
        if (attempt == 1) restore_all();
        for (std::size_t k = 0; k < run.size(); ++k) {
          if (done[k]) continue;
          if (!strat.reorder && k != step) continue;
          std::vector<std::size_t> cands;
          if (ancilla) cands.push_back(n);
          else
            for (Qubit q = 0; q < n; ++q)
              if (supp[k][q]) cands.push_back(q);
          for (std::size_t w : cands) {
            if (!carrier[w] && (carriers >= std::max<std::size_t>(strat.max_carriers, 1) || !at_home(w))) continue;
            Bits diff = bits_xor(held[w], supp[k]);
            bool ok = true;
            for (Qubit q = 0; q < n; ++q)
              if (diff[q] && (q == w || !at_home(q))) ok = false;
            if (!ok) continue;
            std::size_t cost = bits_count(diff) + (strat.balance ? chain[w] : 0);
            bool better = best_k == run.size() || cost < best_cost ||
                          (cost == best_cost && k == best_k && carrier[w] && !carrier[best_w]) ||
                          (cost == best_cost && k == best_k && carrier[w] == carrier[best_w] && w > best_w);
            if (better) best_k = k, best_w = w, best_cost = cost;
          }
        }
      }
      if (best_k == run.size()) throw std::logic_error("no carrier available for rotation");
      const std::size_t k = best_k, w = best_w;
      if (!carrier[w]) carrier[w] = true, ++carriers;
      Bits diff = bits_xor(held[w], supp[k]);
      for (Qubit q = 0; q < n; ++q)
        if (diff[q]) emit_logical(CliffordGate::cx(q, static_cast<Qubit>(w)));
      held[w] = supp[k];
      done[k] = true;
      ++chain[w];

      // gadget: the carrier teleports onto a fresh |+> wire
      Qubit old = wire[w];
      Qubit fresh = em.fresh();
      em.raw(CliffordGate::h(fresh));
      em.flush(old);
      em.raw(CliffordGate::cz(old, fresh));
      em.owe_h(fresh);
      wire[w] = fresh;

      const auto& r = rots[run[k]];
      MeasurementInstruction mi;
      mi.target = old;
      mi.base_angle = -grp.z_images[k].sign() * r.angle;
      pat.measurements.push_back(mi);
      frame_strings.push_back(r.string);
      pat.generators.push_back(originals[r.source]);
    }
    restore_all();
    for (const auto& g : inverse(grp.diagonalizer)) emit_logical(g);
  }

  for (std::size_t s = 0; s < slots; ++s) em.flush(wire[s]);
  for (const auto& g : frame) emit_logical(g);
  for (Qubit q = 0; q < n; ++q) em.flush(wire[q]);

  for (std::size_t i = 0; i < frame_strings.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (!commutes(frame_strings[i], frame_strings[j])) pat.measurements[i].adapt_set.push_back(j);
    pat.corrections.push_back({i, conjugate(frame, frame_strings[i])});
  }

  pat.output_wires.assign(wire.begin(), wire.begin() + n);
  pat.ancilla_qubits = em.wire_count() - n;
  auto body = em.take();
  pat.clifford_part = do_schedule ? schedule(body).circuit : body;
  return pat;
}

}  // namespace detail

/// Strategies tried when optimizing depth; the first one is the plain
/// single-carrier synthesis.
inline std::vector<SynthesisStrategy> synthesis_strategies(Layout layout, std::size_t n) {
  using P = DiagonalizeOptions::Pivot;
  std::vector<SynthesisStrategy> out;
  for (P pivot : {P::Lowest, P::Highest, P::PreferY})
    for (bool tree : {false, true})
      for (bool light : {false, true}) {
        SynthesisStrategy s;
        s.diagonalize = {pivot, tree, light};
        std::size_t max_c = layout == Layout::Star ? std::min<std::size_t>(n, 4) : 1;
        for (std::size_t c = 1; c <= max_c; ++c)
          for (bool bal : {false, true}) {
            if (c == 1 && bal) continue;
            s.max_carriers = c;
            s.balance = bal;
            out.push_back(s);
          }
      }
  return out;
}

/// Compiles a sequence of rotations and Clifford gates acting on `n` main
/// qubits that start in initial|0..0>.
inline StandardFormPattern compile(const std::vector<Step>& steps, std::size_t n, Layout layout,
                                   const CliffordCircuit& initial = {}, CompileOptions opt = {}) {
  if (!opt.optimize_depth) return detail::compile_with(steps, n, layout, initial, SynthesisStrategy{}, opt.schedule);
  std::optional<StandardFormPattern> best;
  std::size_t best_depth = 0, best_gates = 0;
  for (const auto& strat : synthesis_strategies(layout, n)) {
    auto p = detail::compile_with(steps, n, layout, initial, strat, opt.schedule);
    auto sch = schedule(p.clifford_part);
    if (!best || sch.entangling_layers < best_depth ||
        (sch.entangling_layers == best_depth && sch.two_qubit_gates < best_gates)) {
      best_depth = sch.entangling_layers;
      best_gates = sch.two_qubit_gates;
      best = std::move(p);
    }
  }
  return *best;
}

inline StandardFormPattern compile(const std::vector<PauliRotation>& rotations, Layout layout,
                                   const CliffordCircuit& initial = {}, CompileOptions opt = {}) {
  if (rotations.empty()) throw std::invalid_argument("register size unknown for an empty rotation list");
  std::vector<Step> steps(rotations.begin(), rotations.end());
  return compile(steps, rotations.front().string().size(), layout, initial, opt);
}

// ---------------------------------------------------------------------------
// Outcome handling

inline double adaptive_angle(const MeasurementInstruction& m, const std::vector<int>& prior) {
  int h = 0;
  for (auto j : m.adapt_set) {
    if (j >= prior.size()) throw std::invalid_argument("missing outcome for measurement " + std::to_string(j));
    h ^= prior[j] & 1;
  }
  return h ? -m.base_angle : m.base_angle;
}

inline PauliString final_correction(const StandardFormPattern& p, const std::vector<int>& outcomes) {
  if (outcomes.size() != p.measurements.size())
    throw std::invalid_argument("expected " + std::to_string(p.measurements.size()) + " outcomes, got " +
                                std::to_string(outcomes.size()));
  PauliString c(p.main_qubits);
  for (const auto& t : p.corrections)
    if (outcomes.at(t.control) & 1) c = c * t.pauli;
  return c;
}

/// Correction lifted onto the output wires of the full register.
inline PauliString lift_to_wires(const StandardFormPattern& p, const PauliString& main) {
  PauliString w(p.total_qubits());
  for (Qubit q = 0; q < p.main_qubits; ++q) w.set(p.output_wires[q], main.get(q));
  return w;
}

struct DepthReport {
  std::size_t entangling_layers = 0;  ///< commutation-aware greedy layering
  std::size_t naive_layers = 0;       ///< layering in emission order
  std::size_t two_qubit_gates = 0;
  std::size_t ancilla_count = 0;
  std::size_t measurements = 0;
  std::size_t parallel_groups = 0;    ///< rounds of mutually independent measurements
};

inline DepthReport depth_report(const StandardFormPattern& p) {
  DepthReport r;
  auto a = schedule(p.clifford_part, true);
  auto b = schedule(p.clifford_part, false);
  r.entangling_layers = a.entangling_layers;
  r.naive_layers = b.entangling_layers;
  r.two_qubit_gates = a.two_qubit_gates;
  r.ancilla_count = p.ancilla_qubits;
  r.measurements = p.measurements.size();
  std::vector<std::size_t> round(p.measurements.size(), 1);
  for (std::size_t i = 0; i < p.measurements.size(); ++i) {
    for (auto j : p.measurements[i].adapt_set) round[i] = std::max(round[i], round[j] + 1);
    r.parallel_groups = std::max(r.parallel_groups, round[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dense semantics

/// Applies the steps (rotations and Clifford gates) to a main-register state.
inline void apply_steps(StateVector& s, const std::vector<Step>& steps) {
  for (const auto& step : steps) {
    if (const auto* g = std::get_if<CliffordGate>(&step)) s.apply(*g);
    else s.apply_rotation(std::get<PauliRotation>(step));
  }
}

inline StateVector initial_state(const StandardFormPattern& p) {
  StateVector s(p.main_qubits);
  s.apply(p.initial);
  return s;
}

/// Full register right before the measurement layer, for a main-register
/// input (the initial circuit is not applied) or, in graph form, the stored
/// stabilizer state.
inline StateVector pre_measurement_state(const StandardFormPattern& p, const StateVector* input = nullptr) {
  if (p.graph && !input) return p.graph->graph.to_dense();
  StateVector main = input ? *input : initial_state(p);
  if (main.num_qubits() != p.main_qubits) throw std::invalid_argument("input size does not match main register");
  StateVector full(p.total_qubits());
  auto dst = full.amplitudes();
  auto src = main.amplitudes();
  dst[0] = 0;
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  full.apply(p.clifford_part);
  return full;
}

/// Measures the target of instruction i in its adaptive basis with a fixed
/// outcome; returns the branch probability (state left unnormalized).
inline double measure_instruction(StateVector& s, const MeasurementInstruction& m, const std::vector<int>& prior,
                                  int bit) {
  s.apply_rz(m.target, -adaptive_angle(m, prior));
  s.apply_1q(m.target, mat2::hadamard());
  return s.project(m.target, bit);
}

struct BranchCheckResult {
  double min_fidelity = 1;
  std::size_t branches = 0;
  double total_probability = 0;
  bool ancillas_restored = true;
};

/// Walks every measurement branch, applies the final correction and compares
/// the output wires with `expected` (a main-register state).
inline BranchCheckResult branch_check(const StandardFormPattern& p, const StateVector& expected,
                                      const StateVector* input = nullptr, double prob_eps = 1e-12) {
  BranchCheckResult res;
  std::vector<Qubit> targets = p.targets();
  std::vector<bool> is_output(p.total_qubits(), false);
  for (Qubit w : p.output_wires) is_output[w] = true;

  std::vector<int> outcomes;
  std::function<void(const StateVector&, double)> walk = [&](const StateVector& s, double prob) {
    std::size_t i = outcomes.size();
    if (i == p.measurements.size()) {
      StateVector f = s;
      f.normalize();
      f.apply_pauli(lift_to_wires(p, final_correction(p, outcomes)));
      std::uint64_t fixed = 0;
      for (std::size_t k = 0; k < targets.size(); ++k)
        if (outcomes[k]) fixed |= std::uint64_t{1} << targets[k];
      double fid = 0;
      try {
        auto out = f.extract(p.output_wires, fixed, 1e-9);
        fid = out.fidelity(expected);
      } catch (const std::runtime_error&) {
        res.ancillas_restored = false;
      }
      res.min_fidelity = std::min(res.min_fidelity, fid);
      ++res.branches;
      res.total_probability += prob;
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      StateVector c = s;
      double pb = measure_instruction(c, p.measurements[i], outcomes, bit);
      if (pb < prob_eps) continue;
      c.normalize();
      outcomes.push_back(bit);
      walk(c, prob * pb);
      outcomes.pop_back();
    }
  };
  walk(pre_measurement_state(p, input), 1.0);
  return res;
}

// ---------------------------------------------------------------------------
// Graph form

inline StandardFormPattern to_graph_form(const StandardFormPattern& p) {
  StandardFormPattern g = p;
  GraphRegister reg(p.total_qubits());
  reg.apply(p.initial);
  reg.apply(p.clifford_part);
  g.graph = GraphForm{std::move(reg), std::vector<Pauli>(p.main_qubits, Pauli::Z)};
  return g;
}

}  // namespace mbqc

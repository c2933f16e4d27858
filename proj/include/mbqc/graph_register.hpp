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
#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/local_clifford.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

namespace detail {

/// Result of the controlled-Z lookup: new edge flag and the two new VOPs.
struct CzEntry {
  bool edge = false;
  LocalClifford a = 0;
  LocalClifford b = 0;
  bool valid = false;
};

/// Lookup table for CZ between two vertices whose VOPs are already reduced.
///
/// Key: (edge present, VOP_a, VOP_b, a has other neighbours, b has other
/// neighbours). A vertex with other neighbours must carry a Z-diagonal VOP
/// before and after. Entries are found by exhaustive search against dense
/// two-qubit states: CZ (Va x Vb) CZ^e |++> must equal (Va' x Vb') CZ^e' |++>
/// up to phase.
class CzTable {
 public:
  static const CzTable& get() {
    static const CzTable t;
    return t;
  }

  const CzEntry& lookup(bool edge, LocalClifford a, LocalClifford b, bool oa, bool ob) const {
    return table_[index(edge, a, b, oa, ob)];
  }

 private:
  static std::size_t index(bool e, int a, int b, bool oa, bool ob) {
    return ((((e ? 1u : 0u) * 24 + a) * 24 + b) * 2 + (oa ? 1u : 0u)) * 2 + (ob ? 1u : 0u);
  }

  using Vec4 = std::array<Complex, 4>;  // index bit0 = a, bit1 = b

  static Vec4 apply_local(const Mat2& ma, const Mat2& mb, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 4; ++i) {
      int ia = i & 1, ib = (i >> 1) & 1;
      for (int j = 0; j < 4; ++j) {
        int ja = j & 1, jb = (j >> 1) & 1;
        out[i] += ma[ia * 2 + ja] * mb[ib * 2 + jb] * v[j];
      }
    }
    return out;
  }
  static Vec4 apply_cz(Vec4 v) {
    v[3] = -v[3];
    return v;
  }
  static bool proportional(const Vec4& u, const Vec4& v) {
    Complex s = 0;
    for (int i = 0; i < 4; ++i) s += std::conj(u[i]) * v[i];
    return std::abs(std::abs(s) - 1.0) < 1e-9;
  }

  CzTable() : table_(2 * 24 * 24 * 4) {
    const auto& g = CliffordGroup::get();
    const Vec4 pp{0.5, 0.5, 0.5, 0.5};
    std::vector<Vec4> cand(2 * 24 * 24);
    for (int e = 0; e < 2; ++e)
      for (int a = 0; a < 24; ++a)
        for (int b = 0; b < 24; ++b) {
          Vec4 v = e ? apply_cz(pp) : pp;
          cand[(e * 24 + a) * 24 + b] = apply_local(g.matrix(a), g.matrix(b), v);
        }
    for (int e = 0; e < 2; ++e)
      for (int a = 0; a < 24; ++a)
        for (int b = 0; b < 24; ++b)
          for (int oa = 0; oa < 2; ++oa)
            for (int ob = 0; ob < 2; ++ob) {
              if (oa && !g.is_z_diagonal(a)) continue;
              if (ob && !g.is_z_diagonal(b)) continue;
              Vec4 target = apply_cz(cand[(e * 24 + a) * 24 + b]);
              CzEntry& entry = table_[index(e, a, b, oa, ob)];
              for (int e2 = 0; e2 < 2 && !entry.valid; ++e2)
                for (int a2 = 0; a2 < 24 && !entry.valid; ++a2) {
                  if (oa && !g.is_z_diagonal(a2)) continue;
                  for (int b2 = 0; b2 < 24; ++b2) {
                    if (ob && !g.is_z_diagonal(b2)) continue;
                    if (proportional(cand[(e2 * 24 + a2) * 24 + b2], target)) {
                      entry = {e2 == 1, static_cast<LocalClifford>(a2), static_cast<LocalClifford>(b2), true};
                      break;
                    }
                  }
                }
              if (!entry.valid) throw std::logic_error("cz table has no solution for a reduced case");
            }
  }

  std::vector<CzEntry> table_;
};

/// For every VOP, the shortest sequence of local complementations that turns
/// it Z-diagonal. 'v' = complement at the vertex itself (right-multiplies the
/// VOP by sqrt(-iX)^dagger), 'n' = complement at a neighbour (right-multiplies
/// by sqrt(iZ)^dagger).
class ReductionWords {
 public:
  static const ReductionWords& get() {
    static const ReductionWords w;
    return w;
  }
  const std::string& word(LocalClifford v) const { return words_[v]; }

 private:
  ReductionWords() : words_(24) {
    const auto& g = CliffordGroup::get();
    const LocalClifford xr = g.inverse(g.sqrt_minus_ix());
    const LocalClifford zr = g.inverse(g.sqrt_iz());
    for (int start = 0; start < 24; ++start) {
      std::vector<std::string> seen(24);
      std::vector<bool> visited(24, false);
      std::deque<LocalClifford> queue{static_cast<LocalClifford>(start)};
      visited[start] = true;
      bool done = false;
      while (!queue.empty() && !done) {
        LocalClifford cur = queue.front();
        queue.pop_front();
        if (g.is_z_diagonal(cur)) {
          words_[start] = seen[cur];
          done = true;
          break;
        }
        for (auto [step, f] : {std::pair{'v', xr}, std::pair{'n', zr}}) {
          LocalClifford nxt = g.compose(cur, f);
          if (!visited[nxt]) {
            visited[nxt] = true;
            seen[nxt] = seen[cur] + step;
            queue.push_back(nxt);
          }
        }
      }
      if (!done) throw std::logic_error("vop reduction search failed");
    }
  }
  std::vector<std::string> words_;
};

}  // namespace detail

struct MeasureResult {
  int outcome = 0;
  bool deterministic = false;
};

/// Preparation circuit for a graph register: H on every qubit, CZ layers,
/// then each VOP as H/S gates.
struct PrepCircuit {
  CliffordCircuit gates;
  std::vector<std::vector<std::pair<Qubit, Qubit>>> cz_layers;
  std::size_t max_degree = 0;
  std::size_t entangling_layers() const { return cz_layers.size(); }
};

/// Stabilizer state stored as a graph plus one local Clifford per vertex:
/// |state> = (prod_v VOP_v) (prod_{(a,b) in E} CZ_ab) |+>^n.
class GraphRegister {
 public:
  GraphRegister() = default;

  /// |0>^n: no edges, VOP = H everywhere.
  explicit GraphRegister(std::size_t n)
      : n_(n), words_((n + 63) / 64), adj_(n, std::vector<std::uint64_t>(words_, 0)),
        vops_(n, CliffordGroup::get().h()) {}

  /// The graph state |G> itself (all VOPs identity) on an empty graph.
  static GraphRegister plus_state(std::size_t n) {
    GraphRegister r(n);
    std::fill(r.vops_.begin(), r.vops_.end(), CliffordGroup::get().id());
    return r;
  }

  std::size_t size() const { return n_; }

  bool has_edge(Qubit a, Qubit b) const {
    check(a); check(b);
    return (adj_[a][b / 64] >> (b % 64)) & 1u;
  }
  void add_edge(Qubit a, Qubit b) {
    if (!has_edge(a, b)) toggle_edge(a, b);
  }
  void remove_edge(Qubit a, Qubit b) {
    if (has_edge(a, b)) toggle_edge(a, b);
  }
  void toggle_edge(Qubit a, Qubit b) {
    check(a); check(b);
    if (a == b) throw std::invalid_argument("self loops are not allowed");
    adj_[a][b / 64] ^= std::uint64_t{1} << (b % 64);
    adj_[b][a / 64] ^= std::uint64_t{1} << (a % 64);
  }

  std::vector<Qubit> neighbors(Qubit v) const {
    check(v);
    std::vector<Qubit> out;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = adj_[v][w];
      while (bits) {
        int t = std::countr_zero(bits);
        out.push_back(static_cast<Qubit>(w * 64 + t));
        bits &= bits - 1;
      }
    }
    return out;
  }
  std::size_t degree(Qubit v) const {
    check(v);
    std::size_t d = 0;
    for (auto w : adj_[v]) d += std::popcount(w);
    return d;
  }
  std::size_t edge_count() const {
    std::size_t d = 0;
    for (Qubit v = 0; v < n_; ++v) d += degree(v);
    return d / 2;
  }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (Qubit v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }
  std::vector<std::pair<Qubit, Qubit>> edges() const {
    std::vector<std::pair<Qubit, Qubit>> out;
    for (Qubit a = 0; a < n_; ++a)
      for (Qubit b : neighbors(a))
        if (a < b) out.emplace_back(a, b);
    return out;
  }
  /// Adjacency words of vertex v (bit b set iff edge v-b).
  const std::vector<std::uint64_t>& adjacency_row(Qubit v) const { return adj_[v]; }

  LocalClifford vop(Qubit v) const {
    check(v);
    return vops_[v];
  }
  void set_vop(Qubit v, LocalClifford c) {
    check(v);
    vops_[v] = c;
  }

  bool operator==(const GraphRegister& o) const {
    return n_ == o.n_ && adj_ == o.adj_ && vops_ == o.vops_;
  }

  // -------------------------------------------------------------------------
  // Gates

  /// VOP_q <- g * VOP_q.
  void apply_local(Qubit q, LocalClifford g) {
    check(q);
    vops_[q] = CliffordGroup::get().compose(g, vops_[q]);
  }

  void apply(const CliffordGate& g) {
    const auto& grp = CliffordGroup::get();
    switch (g.kind) {
      case GateKind::CX: cx(g.a, g.b); break;
      case GateKind::CZ: cz(g.a, g.b); break;
      default: apply_local(g.a, grp.of(g.kind)); break;
    }
  }
  void apply(const CliffordCircuit& c) {
    for (const auto& g : c) apply(g);
  }

  void cx(Qubit c, Qubit t) {
    const auto h = CliffordGroup::get().h();
    apply_local(t, h);
    cz(c, t);
    apply_local(t, h);
  }

  void cz(Qubit a, Qubit b) {
    check(a); check(b);
    if (a == b) throw std::invalid_argument("cz needs distinct qubits");
    const auto& grp = CliffordGroup::get();
    if (has_other_neighbor(a, b) && !grp.is_z_diagonal(vops_[a])) reduce_vop(a, b);
    if (has_other_neighbor(b, a) && !grp.is_z_diagonal(vops_[b])) reduce_vop(b, a);
    // reducing b can give a new neighbours
    if (has_other_neighbor(a, b) && !grp.is_z_diagonal(vops_[a])) reduce_vop(a, b);
    const bool oa = has_other_neighbor(a, b), ob = has_other_neighbor(b, a);
    const auto& e = detail::CzTable::get().lookup(has_edge(a, b), vops_[a], vops_[b], oa, ob);
    if (!e.valid) throw std::logic_error("cz lookup hit an unreduced case");
    if (e.edge != has_edge(a, b)) toggle_edge(a, b);
    vops_[a] = e.a;
    vops_[b] = e.b;
  }

  /// Local complementation at v; the represented state is unchanged.
  void local_complement(Qubit v) {
    check(v);
    const auto& grp = CliffordGroup::get();
    const auto nb = neighbors(v);
    const auto& row = adj_[v];
    for (Qubit a : nb) {
      for (std::size_t w = 0; w < words_; ++w) adj_[a][w] ^= row[w];
      adj_[a][a / 64] &= ~(std::uint64_t{1} << (a % 64));
    }
    vops_[v] = grp.compose(vops_[v], grp.inverse(grp.sqrt_minus_ix()));
    const LocalClifford zr = grp.inverse(grp.sqrt_iz());
    for (Qubit a : nb) vops_[a] = grp.compose(vops_[a], zr);
  }

  // -------------------------------------------------------------------------
  // Measurement

  /// Measures qubit q in the given Pauli basis. When `force` is set the
  /// outcome is fixed (for branch enumeration); forcing an impossible outcome
  /// of a deterministic measurement throws.
  template <class Rng>
  MeasureResult measure(Qubit q, Pauli basis, Rng& rng, std::optional<int> force = std::nullopt) {
    check(q);
    if (basis == Pauli::I) throw std::invalid_argument("cannot measure identity");
    const auto& grp = CliffordGroup::get();
    for (int guard = 0; guard < 4; ++guard) {
      // graph-level observable: VOP^dagger B VOP
      SignedPauli eff = grp.conjugate(grp.inverse(vops_[q]), basis);
      if (eff.pauli == Pauli::Z) {
        int bit;
        if (force) bit = *force;
        else bit = std::uniform_int_distribution<int>(0, 1)(rng);
        int graph_bit = eff.sign < 0 ? bit ^ 1 : bit;
        graph_z_collapse(q, graph_bit);
        return {bit, false};
      }
      if (eff.pauli == Pauli::Y) {
        local_complement(q);
        continue;
      }
      // X on the graph level
      auto nb = neighbors(q);
      if (nb.empty()) {
        int bit = eff.sign < 0 ? 1 : 0;
        if (force && *force != bit) throw std::domain_error("forced outcome has zero probability");
        return {bit, true};
      }
      local_complement(nb.front());
    }
    throw std::logic_error("measurement did not reduce to a Z measurement");
  }

  /// Reports whether measuring q in `basis` is deterministic, without
  /// changing the state.
  bool is_deterministic(Qubit q, Pauli basis) const {
    GraphRegister copy = *this;
    std::mt19937_64 dummy(0);
    return copy.measure(q, basis, dummy).deterministic;
  }

  // -------------------------------------------------------------------------
  // Export

  StateVector to_dense(std::size_t cap = StateVector::kDefaultCap) const {
    if (n_ > cap) throw CapacityError("register too large for dense export");
    StateVector s(n_, 0, cap);
    const auto& h = mat2::hadamard();
    for (Qubit q = 0; q < n_; ++q) s.apply_1q(q, h);
    for (auto [a, b] : edges()) s.apply_cz(a, b);
    const auto& grp = CliffordGroup::get();
    for (Qubit q = 0; q < n_; ++q) s.apply_1q(q, grp.matrix(vops_[q]));
    return s;
  }

  /// H layer, CZs packed into layers by greedy edge colouring (largest degree
  /// first), then the VOPs. Uses at most max_degree + 1 CZ layers.
  PrepCircuit prep_circuit() const {
    PrepCircuit out;
    out.max_degree = max_degree();
    for (Qubit q = 0; q < n_; ++q) out.gates.push_back(CliffordGate::h(q));
    auto es = edges();
    std::stable_sort(es.begin(), es.end(), [&](auto l, auto r) {
      return std::max(degree(l.first), degree(l.second)) > std::max(degree(r.first), degree(r.second));
    });
    std::vector<std::vector<bool>> used;  // used[layer][qubit]
    for (auto [a, b] : es) {
      std::size_t layer = 0;
      while (layer < used.size() && (used[layer][a] || used[layer][b])) ++layer;
      if (layer == used.size()) {
        used.emplace_back(n_, false);
        out.cz_layers.emplace_back();
      }
      used[layer][a] = used[layer][b] = true;
      out.cz_layers[layer].emplace_back(a, b);
    }
    for (const auto& layer : out.cz_layers)
      for (auto [a, b] : layer) out.gates.push_back(CliffordGate::cz(a, b));
    const auto& grp = CliffordGroup::get();
    for (Qubit q = 0; q < n_; ++q)
      for (GateKind k : grp.word(vops_[q])) out.gates.push_back({k, q, 0});
    return out;
  }

  /// Graphviz rendering; vertices are labelled with their VOP word.
  std::string to_dot(const std::vector<std::string>& labels = {}) const {
    std::ostringstream os;
    const auto& grp = CliffordGroup::get();
    os << "graph G {\n";
    for (Qubit q = 0; q < n_; ++q) {
      std::string w;
      for (GateKind k : grp.word(vops_[q])) w += gate_name(k);
      if (w.empty()) w = "I";
      std::string name = q < labels.size() ? labels[q] : "q" + std::to_string(q);
      os << "  " << q << " [label=\"" << name << "\\n" << w << "\"];\n";
    }
    for (auto [a, b] : edges()) os << "  " << a << " -- " << b << ";\n";
    os << "}\n";
    return os.str();
  }

  /// Adjacency-list text: first line "n <count>", then one line per vertex
  /// "v: u1 u2 ...". VOPs are not part of this format.
  std::string to_adjacency_text() const {
    std::ostringstream os;
    os << "n " << n_ << "\n";
    for (Qubit v = 0; v < n_; ++v) {
      os << v << ":";
      for (Qubit u : neighbors(v)) os << " " << u;
      os << "\n";
    }
    return os.str();
  }

  /// Parses the adjacency-list text into a graph state (VOPs identity).
  static GraphRegister from_adjacency_text(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    std::size_t n = 0;
    if (!(is >> tok) || tok != "n" || !(is >> n)) throw std::invalid_argument("adjacency text must start with 'n <count>'");
    GraphRegister r = plus_state(n);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("missing ':' in adjacency line");
      Qubit v = static_cast<Qubit>(std::stoul(line.substr(0, colon)));
      std::istringstream ls(line.substr(colon + 1));
      Qubit u;
      while (ls >> u) r.add_edge(v, u);
    }
    return r;
  }

  /// Builds a graph state from an edge list (VOPs identity).
  /// The factor on `keep` (new vertex i = keep[i]). Throws when a kept
  /// vertex still has an edge leaving the set.
  GraphRegister subregister(const std::vector<Qubit>& keep) const {
    std::vector<long> pos(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      check(keep[i]);
      if (pos[keep[i]] >= 0) throw std::invalid_argument("duplicate vertex in subregister");
      pos[keep[i]] = static_cast<long>(i);
    }
    GraphRegister out(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      out.vops_[i] = vops_[keep[i]];
      for (Qubit b : neighbors(keep[i])) {
        if (pos[b] < 0) throw std::runtime_error("subregister is entangled with the rest of the register");
        if (static_cast<std::size_t>(pos[b]) > i) out.add_edge(static_cast<Qubit>(i), static_cast<Qubit>(pos[b]));
      }
    }
    return out;
  }

  static GraphRegister from_edges(std::size_t n, const std::vector<std::pair<Qubit, Qubit>>& es) {
    GraphRegister r = plus_state(n);
    for (auto [a, b] : es) r.add_edge(a, b);
    return r;
  }

 private:
  void check(Qubit q) const {
    if (q >= n_) throw std::out_of_range("vertex " + std::to_string(q) + " out of range");
  }

  bool has_other_neighbor(Qubit v, Qubit other) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = adj_[v][w];
      if (other / 64 == w) bits &= ~(std::uint64_t{1} << (other % 64));
      if (bits) return true;
    }
    return false;
  }

  Qubit lowest_other_neighbor(Qubit v, Qubit other) const {
    for (Qubit u : neighbors(v))
      if (u != other) return u;
    throw std::logic_error("no other neighbour");
  }

  /// Makes VOP_v Z-diagonal by local complementations at v and at its
  /// lowest-indexed neighbour other than `avoid`.
  void reduce_vop(Qubit v, Qubit avoid) {
    const Qubit helper = lowest_other_neighbor(v, avoid);
    for (char step : detail::ReductionWords::get().word(vops_[v]))
      local_complement(step == 'v' ? v : helper);
  }

  /// Z measurement on the graph level with outcome `bit`.
  void graph_z_collapse(Qubit v, int bit) {
    const auto& grp = CliffordGroup::get();
    for (Qubit u : neighbors(v)) {
      if (bit) vops_[u] = grp.compose(vops_[u], grp.z());
      toggle_edge(v, u);
    }
    LocalClifford local = bit ? grp.compose(grp.x(), grp.h()) : grp.h();
    vops_[v] = grp.compose(vops_[v], local);
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> adj_;
  std::vector<LocalClifford> vops_;
};

}  // namespace mbqc

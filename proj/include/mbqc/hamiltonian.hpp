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

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

struct Term {
  double coefficient = 0;
  PauliString string;
};

/// Weighted Pauli sum plus a constant offset.
class Hamiltonian {
 public:
  Hamiltonian() = default;
  explicit Hamiltonian(std::size_t n, double offset = 0) : n_(n), offset_(offset) {}

  std::size_t num_qubits() const { return n_; }
  double offset() const { return offset_; }
  void set_offset(double o) { offset_ = o; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Adds c * p, merging with an existing equal word. The phase of p must be
  /// +1 or -1; a -1 is folded into the coefficient.
  void add(double c, PauliString p) {
    if (n_ == 0 && terms_.empty()) n_ = p.size();
    if (p.size() != n_) throw PauliError("term size does not match hamiltonian size");
    if (!p.is_hermitian()) throw PauliError("hamiltonian terms must be hermitian");
    if (p.sign() < 0) c = -c;
    p.set_phase_exponent(0);
    if (p.is_identity_word()) {
      offset_ += c;
      return;
    }
    for (auto& t : terms_)
      if (t.string == p) {
        t.coefficient += c;
        return;
      }
    terms_.push_back({c, std::move(p)});
  }

  /// Text format: optional "offset <value>" line, then "<coefficient>
  /// <dense pauli>" per line. '#' starts a comment.
  static Hamiltonian parse(const std::string& text) {
    Hamiltonian h;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string a, b, extra;
      if (!(ls >> a)) continue;
      if (!(ls >> b) || (ls >> extra))
        throw std::invalid_argument("hamiltonian line " + std::to_string(lineno) + ": expected two fields");
      try {
        if (a == "offset") {
          h.offset_ += std::stod(b);
          continue;
        }
        h.add(std::stod(a), parse_pauli(b));
      } catch (const PauliError& e) {
        throw std::invalid_argument("hamiltonian line " + std::to_string(lineno) + ": " + e.what());
      } catch (const std::logic_error&) {
        throw std::invalid_argument("hamiltonian line " + std::to_string(lineno) + ": bad number");
      }
    }
    return h;
  }

  static Hamiltonian load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  std::string to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "offset " << offset_ << "\n";
    for (const auto& t : terms_) os << t.coefficient << " " << format_pauli(t.string) << "\n";
    return os.str();
  }

 private:
  std::size_t n_ = 0;
  double offset_ = 0;
  std::vector<Term> terms_;
};

inline double expectation(const StateVector& s, const Hamiltonian& h) {
  double e = h.offset();
  for (const auto& t : h.terms()) e += t.coefficient * s.expectation(t.string);
  return e;
}

/// Mutually commuting terms measured with one diagonalizing circuit.
struct CommutingGroup {
  std::vector<Term> members;
  std::vector<std::size_t> basis;      ///< member indices used as pivots
  CliffordCircuit diagonalizer;
  std::vector<PauliString> z_images;  ///< diagonalizer * member * diagonalizer^dagger
};

/// Greedy first-fit partition by general commutation, in input order.
inline std::vector<CommutingGroup> group(const Hamiltonian& h) {
  std::vector<CommutingGroup> groups;
  for (const auto& t : h.terms()) {
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (const auto& m : g.members)
        if (!commutes(m.string, t.string)) {
          ok = false;
          break;
        }
      if (ok) {
        g.members.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({{t}, {}, {}, {}});
  }
  return groups;
}

struct DiagonalizeOptions {
  enum class Pivot { Lowest, Highest, PreferY };
  Pivot pivot = Pivot::Lowest;
  bool tree = false;          ///< clear X bits pairwise in log depth instead of a fan from the pivot
  bool lightest_first = false;  ///< eliminate the member with the fewest X bits first
};

/// Fills diagonalizer, basis and z_images. Each round takes a member that
/// still has an X part, clears its X part down to one pivot qubit with CX,
/// turns a Y on the pivot into X, clears its Z part with CZ and finishes
/// with H on the pivot.
inline void diagonalize(CommutingGroup& g, DiagonalizeOptions opt = {}) {
  const std::size_t m = g.members.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!commutes(g.members[i].string, g.members[j].string))
        throw std::invalid_argument("diagonalize needs a commuting group");
  std::vector<PauliString> cur;
  for (const auto& t : g.members) cur.push_back(t.string);
  g.diagonalizer.clear();
  g.basis.clear();
  auto emit = [&](const CliffordGate& gate) {
    g.diagonalizer.push_back(gate);
    for (auto& p : cur) p = conjugate(gate, std::move(p));
  };
  auto x_support = [](const PauliString& p) {
    std::vector<Qubit> xs;
    for (Qubit q = 0; q < p.size(); ++q)
      if (p.x_bit(q)) xs.push_back(q);
    return xs;
  };
  for (;;) {
    std::size_t pick = m, pick_weight = 0;
    for (std::size_t i = 0; i < m; ++i) {
      auto w = x_support(cur[i]).size();
      if (w == 0) continue;
      if (pick == m || (opt.lightest_first && w < pick_weight)) pick = i, pick_weight = w;
      if (!opt.lightest_first) break;
    }
    if (pick == m) break;
    g.basis.push_back(pick);
    const std::size_t n = cur[pick].size();
    auto xs = x_support(cur[pick]);
    Qubit pivot = xs.front();
    if (opt.pivot == DiagonalizeOptions::Pivot::Highest) pivot = xs.back();
    if (opt.pivot == DiagonalizeOptions::Pivot::PreferY)
      for (Qubit q : xs)
        if (cur[pick].z_bit(q)) pivot = q;
    if (opt.tree) {
      std::vector<Qubit> active{pivot};
      for (Qubit q : xs)
        if (q != pivot) active.push_back(q);
      while (active.size() > 1) {
        std::vector<Qubit> next;
        for (std::size_t k = 0; k < active.size(); k += 2) {
          if (k + 1 < active.size()) emit(CliffordGate::cx(active[k], active[k + 1]));
          next.push_back(active[k]);
        }
        active = std::move(next);
      }
    } else {
      for (Qubit t : xs)
        if (t != pivot) emit(CliffordGate::cx(pivot, t));
    }
    if (cur[pick].z_bit(pivot)) emit(CliffordGate::sdg(pivot));
    for (Qubit t = 0; t < n; ++t)
      if (t != pivot && cur[pick].z_bit(t)) emit(CliffordGate::cz(pivot, t));
    emit(CliffordGate::h(pivot));
  }
  g.z_images = std::move(cur);
}

inline std::vector<CommutingGroup> group_and_diagonalize(const Hamiltonian& h) {
  auto gs = group(h);
  for (auto& g : gs) diagonalize(g);
  return gs;
}

using Counts = std::map<std::string, std::uint64_t>;

/// Parity of the bits of `bits` (qubit 0 rightmost) on the support of a Z
/// word, as +1 / -1.
inline int z_parity(const PauliString& z, const std::string& bits) {
  const std::size_t n = bits.size();
  int parity = 0;
  for (Qubit q : z.support()) {
    if (q >= n) throw std::invalid_argument("bitstring shorter than register");
    parity ^= bits[n - 1 - q] == '1';
  }
  return parity ? -1 : 1;
}

/// Sum over members of coefficient * sign * mean parity, from counts taken
/// after the diagonalizer.
inline double expectation_from_counts(const CommutingGroup& g, const Counts& counts) {
  std::uint64_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  if (total == 0) throw std::invalid_argument("empty counts");
  double e = 0;
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    const auto& z = g.z_images.at(i);
    if (z.has_x_part()) throw std::invalid_argument("group is not diagonalized");
    double acc = 0;
    for (const auto& [bits, c] : counts) acc += double(c) * z_parity(z, bits);
    e += g.members[i].coefficient * z.sign() * acc / double(total);
  }
  return e;
}

}  // namespace mbqc

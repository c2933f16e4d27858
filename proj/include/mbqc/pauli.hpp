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
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mbqc {

/// Qubit index. Qubit q is bit q of a basis-state index and character q of a
/// dense Pauli word.
using Qubit = std::uint32_t;

class PauliError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char pauli_char(Pauli p) { return "IXZY"[static_cast<int>(p)]; }

/// An n-qubit Pauli word with an exact phase in {+1, +i, -1, -i}.
///
/// Stored as x/z bit masks (Y sets both bits) plus the exponent k of i^k
/// multiplying the tensor product of the single-qubit matrices I, X, Y, Z.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : n_(n), xs_(words(n), 0), zs_(words(n), 0) {}

  static PauliString identity(std::size_t n) { return PauliString(n); }

  static PauliString single(std::size_t n, Qubit q, Pauli p) {
    PauliString r(n);
    r.set(q, p);
    return r;
  }

  std::size_t size() const { return n_; }

  /// Exponent k of the phase i^k, always in [0, 4).
  unsigned phase_exponent() const { return phase_; }
  void set_phase_exponent(unsigned k) { phase_ = k & 3u; }
  bool is_hermitian() const { return (phase_ & 1u) == 0; }
  /// +1 or -1 for Hermitian words; throws otherwise.
  int sign() const {
    if (!is_hermitian()) throw PauliError("pauli string has imaginary phase");
    return phase_ == 0 ? 1 : -1;
  }

  Pauli get(Qubit q) const {
    check_index(q);
    unsigned x = (xs_[q / 64] >> (q % 64)) & 1u;
    unsigned z = (zs_[q / 64] >> (q % 64)) & 1u;
    return static_cast<Pauli>(x | (z << 1));
  }

  void set(Qubit q, Pauli p) {
    check_index(q);
    std::uint64_t bit = std::uint64_t{1} << (q % 64);
    auto v = static_cast<unsigned>(p);
    xs_[q / 64] = (v & 1u) ? (xs_[q / 64] | bit) : (xs_[q / 64] & ~bit);
    zs_[q / 64] = (v & 2u) ? (zs_[q / 64] | bit) : (zs_[q / 64] & ~bit);
  }

  bool x_bit(Qubit q) const { return (xs_[q / 64] >> (q % 64)) & 1u; }
  bool z_bit(Qubit q) const { return (zs_[q / 64] >> (q % 64)) & 1u; }

  bool is_identity_word() const {
    return std::all_of(xs_.begin(), xs_.end(), [](auto w) { return w == 0; }) &&
           std::all_of(zs_.begin(), zs_.end(), [](auto w) { return w == 0; });
  }
  bool has_x_part() const {
    return std::any_of(xs_.begin(), xs_.end(), [](auto w) { return w != 0; });
  }

  std::vector<Qubit> support() const {
    std::vector<Qubit> out;
    for (Qubit q = 0; q < n_; ++q)
      if (x_bit(q) || z_bit(q)) out.push_back(q);
    return out;
  }
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) w += std::popcount(xs_[i] | zs_[i]);
    return w;
  }

  const std::vector<std::uint64_t>& x_words() const { return xs_; }
  const std::vector<std::uint64_t>& z_words() const { return zs_; }

  /// Same operator word, ignoring phase.
  bool same_word(const PauliString& o) const { return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_; }
  bool operator==(const PauliString& o) const = default;

  PauliString without_phase() const {
    PauliString r = *this;
    r.phase_ = 0;
    return r;
  }

  // Conjugation primitives, P -> g P g^dagger, phase exact.
  void conj_h(Qubit q) {
    bool x = x_bit(q), z = z_bit(q);
    if (x && z) phase_ = (phase_ + 2) & 3u;
    set_bits(q, z, x);
  }
  void conj_s(Qubit q) {
    bool x = x_bit(q), z = z_bit(q);
    if (x && z) phase_ = (phase_ + 2) & 3u;
    set_bits(q, x, z ^ x);
  }
  void conj_sdg(Qubit q) {
    bool x = x_bit(q), z = z_bit(q);
    if (x && !z) phase_ = (phase_ + 2) & 3u;
    set_bits(q, x, z ^ x);
  }
  void conj_x(Qubit q) {
    if (z_bit(q)) phase_ = (phase_ + 2) & 3u;
  }
  void conj_z(Qubit q) {
    if (x_bit(q)) phase_ = (phase_ + 2) & 3u;
  }
  void conj_y(Qubit q) {
    if (x_bit(q) != z_bit(q)) phase_ = (phase_ + 2) & 3u;
  }
  void conj_cx(Qubit c, Qubit t) {
    bool xc = x_bit(c), zc = z_bit(c), xt = x_bit(t), zt = z_bit(t);
    if (xc && zt && (xt == zc)) phase_ = (phase_ + 2) & 3u;
    set_bits(t, xt ^ xc, zt);
    set_bits(c, xc, zc ^ zt);
  }
  void conj_cz(Qubit a, Qubit b) {
    conj_h(b);
    conj_cx(a, b);
    conj_h(b);
  }

  std::size_t words_count() const { return xs_.size(); }

 private:
  static std::size_t words(std::size_t n) { return (n + 63) / 64; }
  void check_index(Qubit q) const {
    if (q >= n_) throw PauliError("qubit index " + std::to_string(q) + " out of range");
  }
  void set_bits(Qubit q, bool x, bool z) {
    std::uint64_t bit = std::uint64_t{1} << (q % 64);
    xs_[q / 64] = x ? (xs_[q / 64] | bit) : (xs_[q / 64] & ~bit);
    zs_[q / 64] = z ? (zs_[q / 64] | bit) : (zs_[q / 64] & ~bit);
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  unsigned phase_ = 0;

  friend PauliString multiply(const PauliString& p, const PauliString& q);
  friend bool commutes(const PauliString& p, const PauliString& q);
};

inline void require_same_size(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size())
    throw PauliError("pauli length mismatch: " + std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()));
}

/// True iff the two words commute as operators.
inline bool commutes(const PauliString& p, const PauliString& q) {
  require_same_size(p, q);
  unsigned parity = 0;
  for (std::size_t i = 0; i < p.xs_.size(); ++i)
    parity ^= std::popcount((p.xs_[i] & q.zs_[i]) ^ (p.zs_[i] & q.xs_[i])) & 1u;
  return parity == 0;
}

/// Operator product p*q with exact phase.
inline PauliString multiply(const PauliString& p, const PauliString& q) {
  require_same_size(p, q);
  PauliString r(p.n_);
  int plus = 0, minus = 0;
  for (std::size_t i = 0; i < p.xs_.size(); ++i) {
    std::uint64_t x1 = p.xs_[i], z1 = p.zs_[i], x2 = q.xs_[i], z2 = q.zs_[i];
    std::uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
    std::uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
    plus += std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
    minus += std::popcount((Y1 & X2) | (Z1 & Y2) | (X1 & Z2));
    r.xs_[i] = x1 ^ x2;
    r.zs_[i] = z1 ^ z2;
  }
  r.phase_ = static_cast<unsigned>(p.phase_ + q.phase_ + plus + 3 * minus) & 3u;
  return r;
}

inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

// ---------------------------------------------------------------------------
// Clifford gates

enum class GateKind : std::uint8_t { H, S, Sdg, X, Y, Z, CX, CZ };

struct CliffordGate {
  GateKind kind;
  Qubit a = 0;
  Qubit b = 0;  ///< target for CX, second operand for CZ; unused otherwise

  static CliffordGate h(Qubit q) { return {GateKind::H, q, 0}; }
  static CliffordGate s(Qubit q) { return {GateKind::S, q, 0}; }
  static CliffordGate sdg(Qubit q) { return {GateKind::Sdg, q, 0}; }
  static CliffordGate x(Qubit q) { return {GateKind::X, q, 0}; }
  static CliffordGate y(Qubit q) { return {GateKind::Y, q, 0}; }
  static CliffordGate z(Qubit q) { return {GateKind::Z, q, 0}; }
  static CliffordGate cx(Qubit c, Qubit t) { return make2(GateKind::CX, c, t); }
  static CliffordGate cz(Qubit a, Qubit b) { return make2(GateKind::CZ, a, b); }

  bool two_qubit() const { return kind == GateKind::CX || kind == GateKind::CZ; }
  Qubit max_qubit() const { return two_qubit() ? std::max(a, b) : a; }
  bool operator==(const CliffordGate&) const = default;

  CliffordGate inverse() const {
    switch (kind) {
      case GateKind::S: return sdg(a);
      case GateKind::Sdg: return s(a);
      default: return *this;
    }
  }

 private:
  static CliffordGate make2(GateKind k, Qubit a, Qubit b) {
    if (a == b) throw PauliError("two-qubit gate needs distinct qubits");
    return {k, a, b};
  }
};

using CliffordCircuit = std::vector<CliffordGate>;

inline std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

inline std::optional<GateKind> gate_kind_from_name(std::string_view s) {
  std::string u(s);
  for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u == "H") return GateKind::H;
  if (u == "S") return GateKind::S;
  if (u == "SDG" || u == "S_DAG" || u == "SDAG") return GateKind::Sdg;
  if (u == "X") return GateKind::X;
  if (u == "Y") return GateKind::Y;
  if (u == "Z") return GateKind::Z;
  if (u == "CX" || u == "CNOT") return GateKind::CX;
  if (u == "CZ") return GateKind::CZ;
  return std::nullopt;
}

/// g p g^dagger.
inline PauliString conjugate(const CliffordGate& g, PauliString p) {
  if (g.max_qubit() >= p.size()) throw PauliError("gate index out of range");
  switch (g.kind) {
    case GateKind::H: p.conj_h(g.a); break;
    case GateKind::S: p.conj_s(g.a); break;
    case GateKind::Sdg: p.conj_sdg(g.a); break;
    case GateKind::X: p.conj_x(g.a); break;
    case GateKind::Y: p.conj_y(g.a); break;
    case GateKind::Z: p.conj_z(g.a); break;
    case GateKind::CX: p.conj_cx(g.a, g.b); break;
    case GateKind::CZ: p.conj_cz(g.a, g.b); break;
  }
  return p;
}

/// C p C^dagger where C applies the gates of `circuit` in order.
inline PauliString conjugate(const CliffordCircuit& circuit, PauliString p) {
  for (const auto& g : circuit) p = conjugate(g, std::move(p));
  return p;
}

inline CliffordCircuit inverse(const CliffordCircuit& c) {
  CliffordCircuit out;
  out.reserve(c.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it) out.push_back(it->inverse());
  return out;
}

// ---------------------------------------------------------------------------
// Text forms

/// Parses a dense word ("XIYZ", optional leading sign "+", "-", "i", "-i")
/// or a sparse word ("X0 Y2 Z3", "X0X1Y8X9"). `n` fixes the register size for
/// sparse input; dense input must have exactly n characters when n > 0.
inline PauliString parse_pauli(std::string_view text, std::size_t n = 0) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  unsigned phase = 0;
  std::size_t pos = 0;
  if (s.rfind("-i", 0) == 0) { phase = 3; pos = 2; }
  else if (s.rfind("+i", 0) == 0) { phase = 1; pos = 2; }
  else if (!s.empty() && s[0] == '-') { phase = 2; pos = 1; }
  else if (!s.empty() && s[0] == '+') { pos = 1; }
  else if (!s.empty() && s[0] == 'i') { phase = 1; pos = 1; }
  std::string body = s.substr(pos);
  if (body.empty()) throw PauliError("empty pauli text");

  auto sym = [](char c) -> std::optional<Pauli> {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'I': case '_': return Pauli::I;
      case 'X': return Pauli::X;
      case 'Y': return Pauli::Y;
      case 'Z': return Pauli::Z;
      default: return std::nullopt;
    }
  };

  bool sparse = std::any_of(body.begin(), body.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (!sparse) {
    if (n != 0 && body.size() != n)
      throw PauliError("dense pauli '" + body + "' has length " + std::to_string(body.size()) +
                       ", expected " + std::to_string(n));
    PauliString r(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
      auto p = sym(body[i]);
      if (!p) throw PauliError(std::string("unknown pauli symbol '") + body[i] + "'");
      r.set(static_cast<Qubit>(i), *p);
    }
    r.set_phase_exponent(phase);
    return r;
  }

  std::vector<std::pair<Pauli, std::size_t>> items;
  std::size_t i = 0;
  std::size_t max_index = 0;
  while (i < body.size()) {
    auto p = sym(body[i]);
    if (!p) throw PauliError(std::string("unknown pauli symbol '") + body[i] + "'");
    ++i;
    std::size_t j = i;
    while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
    if (j == i) throw PauliError("sparse pauli term without qubit index");
    std::size_t q = std::stoul(body.substr(i, j - i));
    items.emplace_back(*p, q);
    max_index = std::max(max_index, q);
    i = j;
  }
  std::size_t size = n != 0 ? n : max_index + 1;
  if (max_index >= size) throw PauliError("sparse pauli index out of range");
  PauliString r(size);
  std::vector<bool> seen(size, false);
  for (auto [p, q] : items) {
    if (seen[q]) throw PauliError("duplicate sparse index " + std::to_string(q));
    seen[q] = true;
    r.set(static_cast<Qubit>(q), p);
  }
  r.set_phase_exponent(phase);
  return r;
}

/// Canonical dense output; the sign prefix is emitted only for phases != +1.
inline std::string format_pauli(const PauliString& p) {
  static constexpr const char* prefix[] = {"", "+i", "-", "-i"};
  std::string out = prefix[p.phase_exponent()];
  for (Qubit q = 0; q < p.size(); ++q) out.push_back(pauli_char(p.get(q)));
  return out;
}

inline std::string format_sparse(const PauliString& p) {
  std::string out;
  for (Qubit q = 0; q < p.size(); ++q) {
    Pauli v = p.get(q);
    if (v == Pauli::I) continue;
    if (!out.empty()) out.push_back(' ');
    out.push_back(pauli_char(v));
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

// ---------------------------------------------------------------------------

/// exp(-i angle/2 * string). The string must be a non-identity word with
/// phase +1.
class PauliRotation {
 public:
  PauliRotation(PauliString string, double angle) : string_(std::move(string)), angle_(angle) {
    if (string_.is_identity_word())
      throw PauliError("identity rotation is a global phase, not a pauli rotation");
    if (string_.phase_exponent() != 0) throw PauliError("rotation string must have phase +1");
    if (!std::isfinite(angle_)) throw PauliError("rotation angle must be finite");
  }

  const PauliString& string() const { return string_; }
  double angle() const { return angle_; }
  std::size_t size() const { return string_.size(); }

 private:
  PauliString string_;
  double angle_;
};

}  // namespace mbqc

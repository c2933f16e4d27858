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
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbqc/local_clifford.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bitstring label for a basis index, qubit 0 as the rightmost character.
inline std::string bitstring(std::uint64_t index, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q)
    if ((index >> q) & 1u) s[n - 1 - q] = '1';
  return s;
}

/// Inverse of `bitstring`.
inline std::uint64_t parse_bitstring(const std::string& s) {
  std::uint64_t v = 0;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == '1') v |= std::uint64_t{1} << (n - 1 - i);
    else if (s[i] != '0') throw std::invalid_argument("bad bitstring '" + s + "'");
  }
  return v;
}

/// Dense 2^n amplitude vector; the reference simulator every other module is
/// checked against.
class StateVector {
 public:
  static constexpr std::size_t kDefaultCap = 22;

  explicit StateVector(std::size_t n, std::uint64_t basis_index = 0, std::size_t cap = kDefaultCap)
      : n_(n) {
    if (n > cap) throw CapacityError("statevector of " + std::to_string(n) + " qubits exceeds cap");
    amps_.assign(std::size_t{1} << n, Complex(0));
    amps_.at(basis_index) = 1;
  }

  static StateVector from_amplitudes(std::vector<Complex> amps) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if ((std::size_t{1} << n) != amps.size()) throw std::invalid_argument("length is not a power of two");
    StateVector s(n);
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0;
    for (auto a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }
  void normalize() {
    double nrm = norm();
    if (nrm < 1e-300) throw std::runtime_error("cannot normalize zero vector");
    for (auto& a : amps_) a /= nrm;
  }

  void apply_1q(Qubit q, const Mat2& m) {
    check(q);
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
      for (std::size_t i = base; i < base + stride; ++i) {
        Complex a0 = amps_[i], a1 = amps_[i + stride];
        amps_[i] = m[0] * a0 + m[1] * a1;
        amps_[i + stride] = m[2] * a0 + m[3] * a1;
      }
  }

  void apply_cx(Qubit c, Qubit t) {
    check(c); check(t);
    if (c == t) throw std::invalid_argument("cx needs distinct qubits");
    const std::size_t cm = std::size_t{1} << c, tm = std::size_t{1} << t;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
  }

  void apply_cz(Qubit a, Qubit b) {
    check(a); check(b);
    if (a == b) throw std::invalid_argument("cz needs distinct qubits");
    const std::size_t m = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if ((i & m) == m) amps_[i] = -amps_[i];
  }

  void apply(const CliffordGate& g) {
    switch (g.kind) {
      case GateKind::CX: apply_cx(g.a, g.b); break;
      case GateKind::CZ: apply_cz(g.a, g.b); break;
      default: apply_1q(g.a, mat2::of(g.kind)); break;
    }
  }
  void apply(const CliffordCircuit& c) {
    for (const auto& g : c) apply(g);
  }

  void apply_rz(Qubit q, double theta) { apply_1q(q, mat2::rz(theta)); }

  /// Applies the operator P (including its phase) to the state.
  void apply_pauli(const PauliString& p) {
    if (p.size() != n_) throw PauliError("pauli size does not match register");
    std::uint64_t xm = 0, zm = 0, ym = 0;
    if (n_ > 64) throw CapacityError("too many qubits");
    for (Qubit q = 0; q < n_; ++q) {
      if (p.x_bit(q)) xm |= std::uint64_t{1} << q;
      if (p.z_bit(q)) zm |= std::uint64_t{1} << q;
    }
    ym = xm & zm;
    static const Complex ipow[4] = {1, Complex(0, 1), -1, Complex(0, -1)};
    const Complex global = ipow[(p.phase_exponent() + std::popcount(ym)) & 3u];
    std::vector<Complex> out(amps_.size());
    // X^x Z^z with Y = i X Z: P|i> = global * (-1)^{popcount(i & z)} |i ^ x>
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      double s = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
      out[i ^ xm] = global * s * amps_[i];
    }
    amps_ = std::move(out);
  }

  /// exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P.
  void apply_rotation(const PauliString& p, double theta) {
    StateVector moved = *this;
    moved.apply_pauli(p);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (std::size_t i = 0; i < amps_.size(); ++i)
      amps_[i] = c * amps_[i] - Complex(0, s) * moved.amps_[i];
  }
  void apply_rotation(const PauliRotation& r) { apply_rotation(r.string(), r.angle()); }

  Complex inner(const StateVector& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    Complex s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * o.amps_[i];
    return s;
  }

  /// |<this|o>|^2 for normalized states.
  double fidelity(const StateVector& o) const { return std::norm(inner(o)); }

  /// Probability that qubit q reads `bit` in the Z basis.
  double probability(Qubit q, int bit) const {
    check(q);
    double p = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if ((int)((i >> q) & 1u) == bit) p += std::norm(amps_[i]);
    return p;
  }

  /// Projects qubit q onto |bit> without renormalizing; returns the
  /// probability of that branch.
  double project(Qubit q, int bit) {
    check(q);
    double p = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((int)((i >> q) & 1u) == bit) p += std::norm(amps_[i]);
      else amps_[i] = 0;
    }
    return p;
  }

  /// Samples a Z-basis measurement of q and collapses the state.
  template <class Rng>
  int measure(Qubit q, Rng& rng) {
    double p1 = probability(q, 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bit = u(rng) < p1 ? 1 : 0;
    project(q, bit);
    normalize();
    return bit;
  }

  /// Exact Born probabilities over the listed qubits; key bit i = qubits[i].
  std::vector<double> distribution(std::span<const Qubit> qubits) const {
    for (Qubit q : qubits) check(q);
    std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      double w = std::norm(amps_[i]);
      if (w == 0) continue;
      std::size_t key = 0;
      for (std::size_t k = 0; k < qubits.size(); ++k)
        if ((i >> qubits[k]) & 1u) key |= std::size_t{1} << k;
      out[key] += w;
    }
    return out;
  }
  std::vector<double> distribution() const {
    std::vector<double> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) out[i] = std::norm(amps_[i]);
    return out;
  }

  /// <psi|P|psi> (real part; exact for Hermitian P).
  double expectation(const PauliString& p) const {
    StateVector moved = *this;
    moved.apply_pauli(p);
    return inner(moved).real();
  }

  /// Reduced pure state on `keep` (in that order), assuming every other qubit
  /// is in the computational basis state given by `fixed_bits` (bit q of
  /// fixed_bits for qubit q). Throws when the remainder is not in that product
  /// state to tolerance.
  StateVector extract(std::span<const Qubit> keep, std::uint64_t fixed_bits, double tol = 1e-9) const {
    std::uint64_t keep_mask = 0;
    for (Qubit q : keep) keep_mask |= std::uint64_t{1} << q;
    std::vector<Complex> out(std::size_t{1} << keep.size(), Complex(0));
    double kept = 0, total = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      double w = std::norm(amps_[i]);
      total += w;
      if ((i & ~keep_mask) != (fixed_bits & ~keep_mask)) continue;
      kept += w;
      std::size_t key = 0;
      for (std::size_t k = 0; k < keep.size(); ++k)
        if ((i >> keep[k]) & 1u) key |= std::size_t{1} << k;
      out[key] = amps_[i];
    }
    if (total - kept > tol * std::max(total, 1e-300))
      throw std::runtime_error("remaining qubits are not in the requested basis state");
    auto s = StateVector::from_amplitudes(std::move(out));
    s.normalize();
    return s;
  }

 private:
  void check(Qubit q) const {
    if (q >= n_) throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
  }
  std::size_t n_;
  std::vector<Complex> amps_;
};

/// Outcome record of an exhaustive branch enumeration.
struct Branch {
  std::vector<int> outcomes;
  double probability = 0;
  StateVector state{0};
};

/// Enumerates every Z-basis outcome of the listed qubits (measured in order)
/// and returns each branch with nonzero probability and its normalized
/// post-measurement state.
inline std::vector<Branch> branch_enumerate(const StateVector& input, std::span<const Qubit> measured,
                                            std::size_t max_qubits = 14, double eps = 1e-14) {
  if (input.num_qubits() > max_qubits)
    throw CapacityError("branch enumeration limited to " + std::to_string(max_qubits) + " qubits");
  std::vector<Branch> out;
  const std::size_t count = std::size_t{1} << measured.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    StateVector s = input;
    double p = 1;
    std::vector<int> bits(measured.size());
    for (std::size_t k = 0; k < measured.size(); ++k) {
      bits[k] = (mask >> k) & 1u;
      s.project(measured[k], bits[k]);
    }
    p = s.norm() * s.norm();
    if (p <= eps) continue;
    s.normalize();
    out.push_back({std::move(bits), p, std::move(s)});
  }
  return out;
}

/// Dense matrix of a Pauli word (test and small-n use only).
inline std::vector<Complex> pauli_matrix(const PauliString& p) {
  const std::size_t dim = std::size_t{1} << p.size();
  std::vector<Complex> m(dim * dim, Complex(0));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector e(p.size(), col);
    e.apply_pauli(p);
    for (std::size_t row = 0; row < dim; ++row) m[row * dim + col] = e[row];
  }
  return m;
}

}  // namespace mbqc

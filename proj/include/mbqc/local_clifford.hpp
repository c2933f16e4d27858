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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mbqc/pauli.hpp"

namespace mbqc {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row major

namespace mat2 {

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

/// Equality up to a global phase.
inline bool equal_up_to_phase(const Mat2& a, const Mat2& b, double tol = 1e-9) {
  Complex tr = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2] +
               std::conj(a[3]) * b[3];
  return std::abs(std::abs(tr) - 2.0) < tol;
}

inline const Mat2& identity() { static const Mat2 m{1, 0, 0, 1}; return m; }
inline const Mat2& pauli_x() { static const Mat2 m{0, 1, 1, 0}; return m; }
inline const Mat2& pauli_y() { static const Mat2 m{0, Complex(0, -1), Complex(0, 1), 0}; return m; }
inline const Mat2& pauli_z() { static const Mat2 m{1, 0, 0, -1}; return m; }
inline const Mat2& hadamard() {
  static const double r = 1.0 / std::sqrt(2.0);
  static const Mat2 m{r, r, r, -r};
  return m;
}
inline const Mat2& phase_s() { static const Mat2 m{1, 0, 0, Complex(0, 1)}; return m; }
inline const Mat2& phase_sdg() { static const Mat2 m{1, 0, 0, Complex(0, -1)}; return m; }

inline Mat2 of(GateKind k) {
  switch (k) {
    case GateKind::H: return hadamard();
    case GateKind::S: return phase_s();
    case GateKind::Sdg: return phase_sdg();
    case GateKind::X: return pauli_x();
    case GateKind::Y: return pauli_y();
    case GateKind::Z: return pauli_z();
    default: throw std::invalid_argument("not a single-qubit gate");
  }
}

inline Mat2 rz(double theta) {
  return {std::exp(Complex(0, -theta / 2)), 0, 0, std::exp(Complex(0, theta / 2))};
}

}  // namespace mat2

/// Signed single-qubit Pauli, e.g. -Y.
struct SignedPauli {
  Pauli pauli = Pauli::I;
  int sign = 1;
  bool operator==(const SignedPauli&) const = default;
};

/// Index of one of the 24 single-qubit Clifford classes (global phase dropped).
using LocalClifford = std::uint8_t;

/// The single-qubit Clifford group modulo phase. Built once from H and S by
/// breadth-first search over 2x2 matrices; every table is derived from those
/// matrices.
class CliffordGroup {
 public:
  static constexpr int kSize = 24;

  static const CliffordGroup& get() {
    static const CliffordGroup g;
    return g;
  }

  const Mat2& matrix(LocalClifford a) const { return mats_[a]; }
  /// a * b as operators (b is applied first).
  LocalClifford compose(LocalClifford a, LocalClifford b) const { return mult_[a][b]; }
  LocalClifford inverse(LocalClifford a) const { return inv_[a]; }
  /// g P g^dagger for P in {X, Y, Z}.
  SignedPauli conjugate(LocalClifford g, Pauli p) const {
    if (p == Pauli::I) return {Pauli::I, 1};
    return action_[g][static_cast<int>(p) - 1];
  }
  /// Gate word realizing the element: applying word[0], word[1], ... in order.
  const std::vector<GateKind>& word(LocalClifford a) const { return words_[a]; }

  LocalClifford find(const Mat2& m) const {
    for (int i = 0; i < kSize; ++i)
      if (mat2::equal_up_to_phase(mats_[i], m)) return static_cast<LocalClifford>(i);
    throw std::invalid_argument("matrix is not a single-qubit clifford");
  }

  LocalClifford of(GateKind k) const { return find(mat2::of(k)); }

  bool is_z_diagonal(LocalClifford a) const {
    const Mat2& m = mats_[a];
    return std::abs(m[1]) < 1e-9 && std::abs(m[2]) < 1e-9;
  }

  LocalClifford id() const { return 0; }
  LocalClifford h() const { return h_; }
  LocalClifford s() const { return s_; }
  LocalClifford sdg() const { return sdg_; }
  LocalClifford x() const { return x_; }
  LocalClifford y() const { return y_; }
  LocalClifford z() const { return z_; }
  /// sqrt(-iX) and sqrt(iZ), the local-complementation factors.
  LocalClifford sqrt_minus_ix() const { return smx_; }
  LocalClifford sqrt_iz() const { return siz_; }

 private:
  CliffordGroup() {
    mats_.push_back(mat2::identity());
    words_.push_back({});
    for (std::size_t head = 0; head < mats_.size(); ++head) {
      for (GateKind k : {GateKind::H, GateKind::S}) {
        Mat2 m = mat2::mul(mat2::of(k), mats_[head]);
        bool seen = false;
        for (const auto& e : mats_)
          if (mat2::equal_up_to_phase(e, m)) { seen = true; break; }
        if (!seen) {
          mats_.push_back(m);
          auto w = words_[head];
          w.push_back(k);
          words_.push_back(std::move(w));
        }
      }
    }
    if (mats_.size() != kSize) throw std::logic_error("clifford group generation failed");

    for (int a = 0; a < kSize; ++a)
      for (int b = 0; b < kSize; ++b) mult_[a][b] = find(mat2::mul(mats_[a], mats_[b]));
    for (int a = 0; a < kSize; ++a) inv_[a] = find(mat2::adjoint(mats_[a]));

    const Mat2 paulis[3] = {mat2::pauli_x(), mat2::pauli_z(), mat2::pauli_y()};
    const Pauli names[3] = {Pauli::X, Pauli::Z, Pauli::Y};
    for (int g = 0; g < kSize; ++g) {
      for (int p = 0; p < 3; ++p) {
        Mat2 img = mat2::mul(mat2::mul(mats_[g], paulis[p]), mat2::adjoint(mats_[g]));
        bool found = false;
        for (int c = 0; c < 3 && !found; ++c) {
          for (int sgn : {1, -1}) {
            Mat2 cand = paulis[c];
            for (auto& v : cand) v *= static_cast<double>(sgn);
            double d = 0;
            for (int i = 0; i < 4; ++i) d += std::abs(cand[i] - img[i]);
            if (d < 1e-9) {
              action_[g][static_cast<int>(names[p]) - 1] = {names[c], sgn};
              found = true;
              break;
            }
          }
        }
        if (!found) throw std::logic_error("clifford action is not a signed pauli");
      }
    }

    h_ = find(mat2::hadamard());
    s_ = find(mat2::phase_s());
    sdg_ = find(mat2::phase_sdg());
    x_ = find(mat2::pauli_x());
    y_ = find(mat2::pauli_y());
    z_ = find(mat2::pauli_z());
    const double r = 1.0 / std::sqrt(2.0);
    smx_ = find(Mat2{r, Complex(0, -r), Complex(0, -r), r});
    siz_ = find(Mat2{Complex(r, r), 0, 0, Complex(r, -r)});
  }

  std::vector<Mat2> mats_;
  std::vector<std::vector<GateKind>> words_;
  std::array<std::array<LocalClifford, kSize>, kSize> mult_{};
  std::array<LocalClifford, kSize> inv_{};
  std::array<std::array<SignedPauli, 3>, kSize> action_{};
  LocalClifford h_{}, s_{}, sdg_{}, x_{}, y_{}, z_{}, smx_{}, siz_{};
};

}  // namespace mbqc

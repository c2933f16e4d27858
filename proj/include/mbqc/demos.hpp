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
#include <cstdint>
#include <random>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/fixtures.hpp"
#include "mbqc/hamiltonian.hpp"
#include "mbqc/hybrid.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc::demos {

inline std::vector<Qubit> register_qubits(std::size_t n) {
  std::vector<Qubit> q(n);
  for (Qubit i = 0; i < n; ++i) q[i] = i;
  return q;
}

// QAOA max-cut on the four-vertex instance.

inline StandardFormPattern qaoa_pattern(Layout layout = Layout::Star, double gamma = fixtures::kQaoaGamma,
                                        double beta = fixtures::kQaoaBeta) {
  return to_graph_form(compile(fixtures::qaoa_rotations(gamma, beta), layout, fixtures::plus_state(4)));
}

inline StateVector qaoa_state(double gamma = fixtures::kQaoaGamma, double beta = fixtures::kQaoaBeta) {
  StateVector s(4);
  s.apply(fixtures::plus_state(4));
  for (const auto& r : fixtures::qaoa_rotations(gamma, beta)) s.apply_rotation(r);
  return s;
}

/// The two most frequent strings, most frequent first.
inline std::vector<std::string> top_two(const Counts& counts) {
  std::vector<std::pair<std::uint64_t, std::string>> v;
  for (const auto& [k, c] : counts) v.push_back({c, k});
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size() && i < 2; ++i) out.push_back(v[i].second);
  return out;
}

// Water VQE groups.

inline StateVector water_state() {
  StateVector s(fixtures::kWaterQubits);
  s.apply(fixtures::water_reference());
  for (const auto& r : fixtures::water_ansatz()) s.apply_rotation(r);
  return s;
}

struct GroupPattern {
  StandardFormPattern pattern;  ///< ansatz followed by the group's diagonalizer
  Hamiltonian observable;       ///< diagonal image of the group
  CommutingGroup group;
};

/// Pattern measuring water group k (0..3): the ansatz rotations, then the
/// diagonalizing Clifford of the group as interleaved gates.
inline GroupPattern water_group_pattern(std::size_t k, Layout layout = Layout::Star) {
  auto h = fixtures::water_group(k);
  auto gs = group_and_diagonalize(h);
  if (gs.size() != 1) throw std::logic_error("water group does not form one commuting set");
  GroupPattern out;
  out.group = gs[0];
  std::vector<Step> steps;
  for (const auto& r : fixtures::water_ansatz()) steps.push_back(r);
  for (const auto& g : out.group.diagonalizer) steps.push_back(g);
  out.pattern = to_graph_form(compile(steps, fixtures::kWaterQubits, layout, fixtures::water_reference()));
  out.observable = Hamiltonian(fixtures::kWaterQubits, h.offset());
  for (std::size_t i = 0; i < out.group.members.size(); ++i)
    out.observable.add(out.group.members[i].coefficient, out.group.z_images[i]);
  return out;
}

// Shot-noise comparison of grouped and per-term estimation.

struct VarianceComparison {
  double grouped_stderr = 0;
  double per_term_stderr = 0;
  double grouped_mean = 0;
  double per_term_mean = 0;
  double exact = 0;
};

/// Repeats both estimators `repetitions` times with `total_shots` each.
/// Per-term: shots split evenly over all terms, each term read in its own
/// eigenbasis. Grouped: shots split evenly over the groups, every member read
/// from the same samples of the diagonalized state.
inline VarianceComparison compare_grouped_variance(const StateVector& state, const std::vector<Hamiltonian>& groups,
                                                   std::size_t total_shots, std::size_t repetitions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Prepared {
    CommutingGroup group;
    std::discrete_distribution<std::size_t> outcome;
  };
  std::vector<Prepared> prepared;
  std::vector<std::pair<double, double>> terms;  // coefficient, <P>
  VarianceComparison r;
  for (const auto& h : groups) {
    auto gs = group_and_diagonalize(h);
    if (gs.size() != 1) throw std::invalid_argument("each input must be one commuting group");
    StateVector d = state;
    d.apply(gs[0].diagonalizer);
    auto probs = d.distribution();
    prepared.push_back({gs[0], std::discrete_distribution<std::size_t>(probs.begin(), probs.end())});
    for (const auto& t : h.terms()) terms.push_back({t.coefficient, state.expectation(t.string)});
    r.exact += expectation(state, h) - h.offset();
  }
  const std::size_t per_term = std::max<std::size_t>(1, total_shots / terms.size());
  const std::size_t per_group = std::max<std::size_t>(1, total_shots / groups.size());
  const std::size_t n = state.num_qubits();
  std::vector<double> g_est, t_est;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    double e = 0;
    for (const auto& [c, mean] : terms) {
      std::binomial_distribution<std::size_t> plus(per_term, (1.0 + mean) / 2.0);
      const double k = double(plus(rng));
      e += c * (2.0 * k - double(per_term)) / double(per_term);
    }
    t_est.push_back(e);
    e = 0;
    for (auto& pg : prepared) {
      Counts counts;
      for (std::size_t s = 0; s < per_group; ++s) ++counts[bitstring(pg.outcome(rng), n)];
      e += expectation_from_counts(pg.group, counts);
    }
    g_est.push_back(e);
  }
  auto stats = [](const std::vector<double>& v, double& mean, double& sd) {
    mean = 0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    sd = std::sqrt(var / double(v.size() - 1));
  };
  stats(g_est, r.grouped_mean, r.grouped_stderr);
  stats(t_est, r.per_term_mean, r.per_term_stderr);
  return r;
}

}  // namespace mbqc::demos

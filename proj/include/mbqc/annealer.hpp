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
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "mbqc/graph_register.hpp"
#include "mbqc/rng.hpp"

namespace mbqc {

/// Preparation cost of a graph state.
struct CostFunction {
  enum class Kind { EdgeCount, MaxDegree, Weighted };
  Kind kind = Kind::EdgeCount;
  double alpha = 1.0;  ///< weight of the edge count for Weighted

  static CostFunction edge_count() { return {Kind::EdgeCount, 1.0}; }
  static CostFunction max_degree() { return {Kind::MaxDegree, 0.0}; }
  static CostFunction weighted(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("weighted cost needs alpha in [0,1]");
    return {Kind::Weighted, alpha};
  }
  static CostFunction parse(const std::string& s) {
    if (s == "edges") return edge_count();
    if (s == "maxdeg") return max_degree();
    if (s.rfind("weighted:", 0) == 0) return weighted(std::stod(s.substr(9)));
    throw std::invalid_argument("unknown cost '" + s + "' (edges, maxdeg, weighted:<alpha>)");
  }
  std::string name() const {
    switch (kind) {
      case Kind::EdgeCount: return "edges";
      case Kind::MaxDegree: return "maxdeg";
      case Kind::Weighted: return "weighted:" + std::to_string(alpha);
    }
    return "";
  }

  double operator()(std::size_t edges, std::size_t maxdeg) const {
    switch (kind) {
      case Kind::EdgeCount: return double(edges);
      case Kind::MaxDegree: return double(maxdeg);
      case Kind::Weighted: return alpha * double(edges) + (1.0 - alpha) * double(maxdeg);
    }
    return 0;
  }
  double operator()(const GraphRegister& g) const { return (*this)(g.edge_count(), g.max_degree()); }
};

/// Geometric cooling T_i = t0 * cooling^i.
struct Schedule {
  double t0 = 2.0;
  double cooling = 0.995;
  std::size_t steps = 2000;

  void validate() const {
    if (!(t0 > 0)) throw std::invalid_argument("t0 must be positive");
    if (!(cooling > 0 && cooling < 1)) throw std::invalid_argument("cooling must lie in (0,1)");
    if (steps == 0) throw std::invalid_argument("steps must be at least 1");
  }
  double temperature(std::size_t i) const { return t0 * std::pow(cooling, double(i)); }
};

struct AnnealResult {
  GraphRegister best;
  double initial_cost = 0;
  double best_cost = 0;
  std::vector<double> best_trace;     ///< best cost seen after each step
  std::vector<double> current_trace;  ///< cost of the current graph after each step
  std::size_t accepted = 0;
  std::uint64_t seed = 0;
};

/// Metropolis walk over the LC orbit: local complementation at a uniformly
/// chosen vertex, accepted with probability min(1, exp(-(f' - f) / T)).
template <class Rng>
AnnealResult anneal(const GraphRegister& reg, const CostFunction& cost, const Schedule& schedule, Rng& rng) {
  schedule.validate();
  AnnealResult r{reg, cost(reg), cost(reg), {}, {}, 0, 0};
  r.best_trace.reserve(schedule.steps);
  r.current_trace.reserve(schedule.steps);
  if (reg.size() == 0) {
    r.best_trace.assign(schedule.steps, r.best_cost);
    r.current_trace = r.best_trace;
    return r;
  }
  GraphRegister cur = reg;
  double f = r.initial_cost;
  std::uniform_int_distribution<std::size_t> pick(0, reg.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < schedule.steps; ++i) {
    GraphRegister cand = cur;
    cand.local_complement(static_cast<Qubit>(pick(rng)));
    const double g = cost(cand);
    const double delta = g - f;
    if (delta <= 0 || u(rng) < std::exp(-delta / schedule.temperature(i))) {
      cur = std::move(cand);
      f = g;
      ++r.accepted;
      if (f < r.best_cost) {
        r.best_cost = f;
        r.best = cur;
      }
    }
    r.best_trace.push_back(r.best_cost);
    r.current_trace.push_back(f);
  }
  return r;
}

/// Independent restarts with seeds derive_seed(master, k); the lowest cost
/// wins, ties going to the lowest restart index.
inline AnnealResult anneal_restarts(const GraphRegister& reg, const CostFunction& cost, const Schedule& schedule,
                                    std::size_t restarts, std::uint64_t master_seed) {
  if (restarts == 0) throw std::invalid_argument("restarts must be at least 1");
  std::vector<std::future<AnnealResult>> jobs;
  for (std::size_t k = 0; k < restarts; ++k) {
    jobs.push_back(std::async(restarts > 1 ? std::launch::async : std::launch::deferred, [&, k] {
      const std::uint64_t seed = derive_seed(master_seed, k);
      Rng rng(seed);
      auto r = anneal(reg, cost, schedule, rng);
      r.seed = seed;
      return r;
    }));
  }
  std::optional<AnnealResult> best;
  for (auto& j : jobs) {
    auto r = j.get();
    if (!best || r.best_cost < best->best_cost) best = std::move(r);
  }
  return *best;
}

namespace detail {

using EdgeMask = std::uint64_t;

inline std::vector<EdgeMask> adjacency_rows(const GraphRegister& reg) {
  std::vector<EdgeMask> rows(reg.size(), 0);
  for (Qubit a = 0; a < reg.size(); ++a)
    for (Qubit b : reg.neighbors(a)) rows[a] |= EdgeMask{1} << b;
  return rows;
}

inline EdgeMask encode_rows(const std::vector<EdgeMask>& rows) {
  const std::size_t n = rows.size();
  EdgeMask m = 0;
  std::size_t k = 0;
  for (Qubit a = 0; a < n; ++a)
    for (Qubit b = a + 1; b < n; ++b, ++k)
      if ((rows[a] >> b) & 1u) m |= EdgeMask{1} << k;
  return m;
}

/// Breadth-first walk over the LC orbit; `visit` sees every graph once and
/// may return true to stop early.
template <class Visit>
void walk_lc_orbit(const GraphRegister& reg, std::size_t max_nodes, Visit&& visit) {
  const std::size_t n = reg.size();
  if (n > max_nodes || n > 11) throw std::invalid_argument("orbit search is limited to small graphs");
  auto start = adjacency_rows(reg);
  std::unordered_set<EdgeMask> seen{encode_rows(start)};
  std::queue<std::vector<EdgeMask>> todo;
  todo.push(start);
  while (!todo.empty()) {
    auto rows = std::move(todo.front());
    todo.pop();
    if (visit(rows)) return;
    for (Qubit v = 0; v < n; ++v) {
      auto next = rows;
      const EdgeMask nb = rows[v];
      for (Qubit a = 0; a < n; ++a)
        if ((nb >> a) & 1u) next[a] ^= nb & ~(EdgeMask{1} << a);
      if (seen.insert(encode_rows(next)).second) todo.push(std::move(next));
    }
  }
}

}  // namespace detail

struct OrbitResult {
  double min_cost = 0;
  std::size_t orbit_size = 0;
};

/// Exact minimum of `cost` over the LC orbit of the graph (vertex operators
/// ignored), by breadth-first search over edge sets.
inline OrbitResult lc_orbit_search(const GraphRegister& reg, const CostFunction& cost, std::size_t max_nodes = 8) {
  OrbitResult out{cost(reg), 0};
  detail::walk_lc_orbit(reg, max_nodes, [&](const std::vector<detail::EdgeMask>& rows) {
    std::size_t e = 0, d = 0;
    for (auto r : rows) {
      std::size_t deg = std::popcount(r);
      e += deg;
      d = std::max(d, deg);
    }
    out.min_cost = std::min(out.min_cost, cost(e / 2, d));
    ++out.orbit_size;
    return false;
  });
  return out;
}

/// True when the two labelled graphs lie in the same LC orbit, so the graph
/// states are equal up to local Cliffords.
inline bool lc_equivalent(const GraphRegister& a, const GraphRegister& b, std::size_t max_nodes = 8) {
  if (a.size() != b.size()) return false;
  const auto target = detail::encode_rows(detail::adjacency_rows(b));
  bool found = false;
  detail::walk_lc_orbit(a, max_nodes, [&](const std::vector<detail::EdgeMask>& rows) {
    found = detail::encode_rows(rows) == target;
    return found;
  });
  return found;
}

}  // namespace mbqc

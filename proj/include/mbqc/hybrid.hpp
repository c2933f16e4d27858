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
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/graph_register.hpp"
#include "mbqc/hamiltonian.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/rng.hpp"

namespace mbqc {

/// One classically simulated shot of the main register plus what remains to
/// be run on the ancillas.
struct ShotRecord {
  std::string main_bits;  ///< qubit 0 rightmost
  GraphRegister ancilla_state;  ///< vertex i = target of measurement i
  /// correction_map[q] lists (measurement index, Pauli acting on main qubit q)
  std::vector<std::vector<std::pair<std::size_t, Pauli>>> correction_map;
  std::vector<int> ancilla_bits;
  std::string corrected_bits;
};

namespace detail {

inline void require_graph_form(const StandardFormPattern& p) {
  if (!p.graph) throw std::invalid_argument("pattern is not in graph form");
  if (p.graph->output_bases.size() != p.main_qubits) throw std::invalid_argument("one basis per main qubit expected");
  for (Pauli b : p.graph->output_bases)
    if (b == Pauli::I) throw std::invalid_argument("main qubits must be read in a Pauli basis");
}

/// Whether a Pauli correction applied before a measurement in `basis` flips the outcome.
inline bool flips(Pauli correction, Pauli basis) {
  return correction != Pauli::I && correction != basis;
}

inline std::vector<MeasurementInstruction> local_instructions(const StandardFormPattern& p) {
  auto instrs = p.measurements;
  for (std::size_t i = 0; i < instrs.size(); ++i) instrs[i].target = static_cast<Qubit>(i);
  return instrs;
}

}  // namespace detail

/// Measures the main qubits of a graph-form pattern on the stabilizer
/// simulator, ignoring the correction layer, and splits off the ancilla
/// factor.
template <class Rng>
ShotRecord simulate_main(const StandardFormPattern& p, Rng& rng) {
  detail::require_graph_form(p);
  GraphRegister g = p.graph->graph;
  ShotRecord r;
  r.main_bits.assign(p.main_qubits, '0');
  for (Qubit q = 0; q < p.main_qubits; ++q) {
    int bit = g.measure(p.output_wires[q], p.graph->output_bases[q], rng).outcome;
    r.main_bits[p.main_qubits - 1 - q] = bit ? '1' : '0';
  }
  r.ancilla_state = g.subregister(p.targets());
  r.correction_map.resize(p.main_qubits);
  for (std::size_t m = 0; m < p.corrections.size(); ++m)
    for (Qubit q = 0; q < p.main_qubits; ++q)
      if (Pauli c = p.corrections[m].pauli.get(q); c != Pauli::I) r.correction_map[q].push_back({p.corrections[m].control, c});
  r.corrected_bits = r.main_bits;
  return r;
}

/// Flips main bits whose correction fired and does not commute with the
/// readout basis.
inline std::string apply_corrections(const StandardFormPattern& p, const ShotRecord& r) {
  std::string out = r.main_bits;
  for (Qubit q = 0; q < p.main_qubits; ++q) {
    bool flip = false;
    for (auto [m, c] : r.correction_map[q])
      if (r.ancilla_bits.at(m) && detail::flips(c, p.graph->output_bases[q])) flip = !flip;
    if (flip) out[p.main_qubits - 1 - q] ^= 1;
  }
  return out;
}

/// Runs ancilla registers. `key` identifies the register so implementations
/// may reuse prepared states.
class Backend {
 public:
  virtual ~Backend() = default;
  /// Prepares `state`, then for each instruction in order measures vertex
  /// instr.target in M((-1)^h * base_angle); returns the outcomes.
  virtual std::vector<int> run(const GraphRegister& state, const std::vector<MeasurementInstruction>& instrs,
                               const std::string& key, Rng& rng) = 0;
};

/// Statevector backend with a bounded cache of prepared registers.
class DenseBackend : public Backend {
 public:
  explicit DenseBackend(std::size_t cap = StateVector::kDefaultCap, std::size_t cache_limit = 4096)
      : cap_(cap), cache_limit_(cache_limit) {}

  std::vector<int> run(const GraphRegister& state, const std::vector<MeasurementInstruction>& instrs,
                       const std::string& key, Rng& rng) override {
    StateVector s = prepared(state, key);
    std::vector<int> bits;
    bits.reserve(instrs.size());
    for (const auto& m : instrs) {
      s.apply_rz(m.target, -adaptive_angle(m, bits));
      s.apply_1q(m.target, mat2::hadamard());
      bits.push_back(s.measure(m.target, rng));
    }
    return bits;
  }

  std::size_t cached() const { return cache_.size(); }

 private:
  StateVector prepared(const GraphRegister& state, const std::string& key) {
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    StateVector s = state.to_dense(cap_);
    if (cache_.size() < cache_limit_) cache_.emplace(key, s);
    return s;
  }

  std::size_t cap_, cache_limit_;
  std::unordered_map<std::string, StateVector> cache_;
};

/// One full shot with seed derive_seed(master, index).
inline ShotRecord run_shot(const StandardFormPattern& p, const std::vector<MeasurementInstruction>& local,
                           Backend& backend, std::uint64_t master_seed, std::uint64_t index) {
  Rng rng(derive_seed(master_seed, index));
  ShotRecord r = simulate_main(p, rng);
  r.ancilla_bits = backend.run(r.ancilla_state, local, r.main_bits, rng);
  r.corrected_bits = apply_corrections(p, r);
  return r;
}

/// Counts over corrected main bitstrings.
inline Counts execute(const StandardFormPattern& p, std::size_t shots, std::uint64_t seed, Backend& backend) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  detail::require_graph_form(p);
  const auto local = detail::local_instructions(p);
  Counts counts;
  for (std::size_t i = 0; i < shots; ++i) ++counts[run_shot(p, local, backend, seed, i).corrected_bits];
  return counts;
}

/// Shots split over `threads` workers, each with its own dense backend. The
/// result does not depend on the thread count.
inline Counts execute(const StandardFormPattern& p, std::size_t shots, std::uint64_t seed, std::size_t threads = 1,
                      std::size_t cap = StateVector::kDefaultCap) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  detail::require_graph_form(p);
  threads = std::max<std::size_t>(1, std::min(threads, shots));
  const auto local = detail::local_instructions(p);
  std::vector<Counts> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](std::size_t t) {
    try {
      DenseBackend backend(cap);
      for (std::size_t i = t; i < shots; i += threads) ++parts[t][run_shot(p, local, backend, seed, i).corrected_bits];
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Counts out;
  for (const auto& part : parts)
    for (const auto& [k, v] : part) out[k] += v;
  return out;
}

// ---------------------------------------------------------------------------
// Observables

struct Estimate {
  double value = 0;
  double standard_error = 0;
};

namespace detail {

inline void require_diagonal(const Hamiltonian& h) {
  for (const auto& t : h.terms())
    if (t.string.has_x_part()) throw std::invalid_argument("observable term " + format_pauli(t.string) + " is not diagonal");
}

}  // namespace detail

/// Mean and standard error of a diagonal observable over counts.
inline Estimate estimate_from_counts(const Hamiltonian& h, const Counts& counts) {
  detail::require_diagonal(h);
  std::uint64_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  if (total == 0) throw std::invalid_argument("empty counts");
  std::vector<std::pair<double, std::uint64_t>> values;
  double mean = 0;
  for (const auto& [bits, c] : counts) {
    double v = h.offset();
    for (const auto& t : h.terms()) v += t.coefficient * t.string.sign() * z_parity(t.string, bits);
    values.push_back({v, c});
    mean += v * double(c);
  }
  mean /= double(total);
  double var = 0;
  for (auto [v, c] : values) var += double(c) * (v - mean) * (v - mean);
  var = total > 1 ? var / double(total - 1) : 0.0;
  return {mean, std::sqrt(var / double(total))};
}

inline Estimate expectation(const StandardFormPattern& p, const Hamiltonian& h, std::size_t shots, std::uint64_t seed,
                            std::size_t threads = 1) {
  if (h.num_qubits() != p.main_qubits && !h.terms().empty())
    throw std::invalid_argument("observable size does not match main register");
  detail::require_diagonal(h);
  return estimate_from_counts(h, execute(p, shots, seed, threads));
}

// ---------------------------------------------------------------------------
// Distributions

using Distribution = std::map<std::string, double>;

inline Distribution to_distribution(const Counts& counts) {
  std::uint64_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  if (total == 0) throw std::invalid_argument("empty counts");
  Distribution d;
  for (const auto& [k, c] : counts) d[k] = double(c) / double(total);
  return d;
}

/// Born distribution of a state over `qubits` (key character order: last
/// listed qubit leftmost).
inline Distribution to_distribution(const StateVector& s, const std::vector<Qubit>& qubits, double floor = 1e-15) {
  auto probs = s.distribution(qubits);
  Distribution d;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > floor) d[bitstring(i, qubits.size())] = probs[i];
  return d;
}

namespace detail {

inline void require_normalized(const Distribution& d) {
  double s = 0;
  for (const auto& [_, v] : d) {
    if (v < 0) throw std::invalid_argument("negative probability");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument("distribution is not normalized");
}

}  // namespace detail

/// (sum_i sqrt(p_i q_i))^2
inline double hellinger_fidelity(const Distribution& p, const Distribution& q) {
  detail::require_normalized(p);
  detail::require_normalized(q);
  double bc = 0;
  for (const auto& [k, v] : p)
    if (auto it = q.find(k); it != q.end()) bc += std::sqrt(v * it->second);
  return bc * bc;
}

/// Hellinger fidelity rescaled so that the uniform distribution over all
/// 2^bits strings scores 0 and a perfect match scores 1. Undefined when the
/// ideal distribution is itself uniform.
inline double hellinger_normalized(const Distribution& ideal, const Distribution& measured, std::size_t bits) {
  detail::require_normalized(ideal);
  const double u = std::ldexp(1.0, -static_cast<int>(bits));
  double bc = 0;
  for (const auto& [_, v] : ideal) bc += std::sqrt(v * u);
  const double fu = bc * bc;
  if (fu >= 1.0 - 1e-12) throw std::domain_error("normalized fidelity is undefined for a uniform ideal distribution");
  return (hellinger_fidelity(ideal, measured) - fu) / (1.0 - fu);
}

inline double total_variation(const Distribution& p, const Distribution& q) {
  double d = 0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    d += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q)
    if (!p.count(k)) d += v;
  return d / 2;
}

// ---------------------------------------------------------------------------
// Ancilla decomposition of main-register Z observables

struct AncillaDecomposition {
  double value = 0;            ///< (1/N) sum_n (-1)^{s_n} <Z_a>_n
  std::size_t outcomes = 0;    ///< N, distinct main outcomes
  bool equal_weights = true;   ///< every main outcome had probability 1/N
};

/// Evaluates a Z word on the main register through its ancilla image: the
/// ancilla Z string covers the measurements whose correction anticommutes
/// with the word, and each main outcome contributes the exact expectation of
/// that string over the adaptive ancilla process.
inline AncillaDecomposition ancilla_decomposition(const StandardFormPattern& p, const PauliString& zq) {
  detail::require_graph_form(p);
  if (zq.size() != p.main_qubits) throw std::invalid_argument("observable size does not match main register");
  if (zq.has_x_part()) throw std::invalid_argument("observable must be a Z word");
  for (Pauli b : p.graph->output_bases)
    if (b != Pauli::Z) throw std::invalid_argument("ancilla decomposition expects Z readout of the main register");
  std::vector<bool> in_za(p.measurements.size(), false);
  for (const auto& c : p.corrections) in_za.at(c.control) = !commutes(c.pauli, zq);
  const auto local = detail::local_instructions(p);

  // exact E[(-1)^{sum_{m in Z_a} s_m}] for one ancilla register
  std::function<double(const StateVector&, std::vector<int>&)> adaptive = [&](const StateVector& s,
                                                                              std::vector<int>& bits) -> double {
    const std::size_t i = bits.size();
    if (i == local.size()) {
      int parity = 0;
      for (std::size_t m = 0; m < bits.size(); ++m) parity ^= in_za[m] && bits[m];
      return parity ? -1.0 : 1.0;
    }
    double acc = 0;
    for (int bit = 0; bit < 2; ++bit) {
      StateVector c = s;
      double pb = measure_instruction(c, local[i], bits, bit);
      if (pb < 1e-14) continue;
      c.normalize();
      bits.push_back(bit);
      acc += pb * adaptive(c, bits);
      bits.pop_back();
    }
    return acc;
  };

  AncillaDecomposition out;
  std::vector<double> weights;
  double sum = 0;
  std::mt19937_64 unused(0);
  std::function<void(const GraphRegister&, Qubit, double, int)> walk = [&](const GraphRegister& g, Qubit q,
                                                                            double prob, int sign) {
    if (q == p.main_qubits) {
      std::vector<int> bits;
      sum += sign * adaptive(g.subregister(p.targets()).to_dense(), bits);
      weights.push_back(prob);
      return;
    }
    const Qubit w = p.output_wires[q];
    if (g.is_deterministic(w, Pauli::Z)) {
      GraphRegister c = g;
      int bit = c.measure(w, Pauli::Z, unused).outcome;
      walk(c, q + 1, prob, zq.get(q) == Pauli::Z && bit ? -sign : sign);
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      GraphRegister c = g;
      c.measure(w, Pauli::Z, unused, bit);
      walk(c, q + 1, prob / 2, zq.get(q) == Pauli::Z && bit ? -sign : sign);
    }
  };
  walk(p.graph->graph, 0, 1.0, zq.sign() < 0 ? -1 : 1);
  out.outcomes = weights.size();
  out.value = sum / double(out.outcomes);
  for (double w : weights) out.equal_weights = out.equal_weights && std::abs(w - 1.0 / double(out.outcomes)) < 1e-12;
  return out;
}

}  // namespace mbqc

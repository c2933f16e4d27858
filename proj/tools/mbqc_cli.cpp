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

// mbqc: command-line front end for the pattern compiler and executor.

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mbqc/mbqc.hpp"

using namespace mbqc;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

StandardFormPattern ensure_graph_form(StandardFormPattern p) {
  if (!p.graph) p = to_graph_form(p);
  return p;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void print_counts(const Counts& counts, std::size_t limit) {
  std::vector<std::pair<std::uint64_t, std::string>> v;
  std::uint64_t total = 0;
  for (const auto& [k, c] : counts) v.push_back({c, k}), total += c;
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
  for (std::size_t i = 0; i < v.size() && i < limit; ++i)
    std::cout << "  " << v[i].second << "  " << std::setw(8) << v[i].first << "  " << fmt(double(v[i].first) / double(total)) << "\n";
}

struct Common {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::size_t shots = 10000;
  std::size_t threads = 1;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed_given) return c.seed;
  if (const char* env = std::getenv("MBQC_SEED")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used == std::strlen(env)) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("MBQC_SEED must be an unsigned integer");
  }
  return c.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-based pattern compiler, graph optimizer and hybrid executor"};
  app.require_subcommand(1);
  Common common;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { common.seed = v, common.seed_given = true; },
        "RNG seed (default: $MBQC_SEED, else 1)");
  };
  auto add_shots = [&](CLI::App* sub) {
    sub->add_option("--shots", common.shots, "number of shots")->check(CLI::PositiveNumber);
    sub->add_option("--threads", common.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  };

  // compile
  std::string circuit_path, pattern_path, out_path = "-", layout_name_opt = "star";
  bool graph_form = false, no_optimize = false;
  auto* c_compile = app.add_subcommand("compile", "compile circuit.json into a standard-form pattern");
  c_compile->add_option("circuit", circuit_path, "circuit JSON")->required();
  c_compile->add_option("--layout", layout_name_opt, "star or star_ancilla")->check(CLI::IsMember({"star", "star_ancilla"}));
  c_compile->add_flag("--graph-form", graph_form, "store the Clifford part as a graph state");
  c_compile->add_flag("--no-optimize", no_optimize, "skip the depth search over synthesis strategies");
  c_compile->add_option("-o,--output", out_path, "output pattern JSON (default stdout)");

  // anneal
  std::string cost_name = "edges", trace_path, dot_before, dot_after;
  Schedule schedule;
  std::size_t restarts = 1;
  auto* c_anneal = app.add_subcommand("anneal", "reduce the pattern's graph by simulated annealing over local complementations");
  c_anneal->add_option("pattern", pattern_path, "pattern JSON")->required();
  c_anneal->add_option("--cost", cost_name, "edges, maxdeg or weighted:<alpha>");
  c_anneal->add_option("--t0", schedule.t0, "initial temperature");
  c_anneal->add_option("--cooling", schedule.cooling, "geometric cooling factor in (0,1)");
  c_anneal->add_option("--steps", schedule.steps, "annealing steps");
  c_anneal->add_option("--restarts", restarts, "independent restarts")->check(CLI::PositiveNumber);
  c_anneal->add_option("--trace", trace_path, "write the cost trace JSON here");
  c_anneal->add_option("--dot-before", dot_before, "write the input graph as DOT");
  c_anneal->add_option("--dot-after", dot_after, "write the optimized graph as DOT");
  c_anneal->add_option("-o,--output", out_path, "output pattern JSON (default stdout)");
  add_seed(c_anneal);

  // sample
  auto* c_sample = app.add_subcommand("sample", "run the hybrid executor and emit counts");
  c_sample->add_option("pattern", pattern_path, "pattern JSON")->required();
  std::string backend = "dense";
  c_sample->add_option("--backend", backend, "ancilla backend")->check(CLI::IsMember({"dense"}))->default_val("dense");
  c_sample->add_option("-o,--output", out_path, "output counts JSON (default stdout)");
  add_seed(c_sample);
  add_shots(c_sample);

  // verify
  std::string mode = "branches";
  double tolerance = -1;
  auto* c_verify = app.add_subcommand("verify", "check a pattern against its source circuit");
  c_verify->add_option("circuit", circuit_path, "circuit JSON")->required();
  c_verify->add_option("pattern", pattern_path, "pattern JSON")->required();
  c_verify->add_option("--mode", mode, "branches or distribution")->check(CLI::IsMember({"branches", "distribution"}));
  c_verify->add_option("--tol", tolerance, "pass threshold (branches: 1-fidelity, default 1e-9; distribution: TVD, default 0.02)");
  add_seed(c_verify);
  add_shots(c_verify);

  // expect
  std::string ham_path;
  auto* c_expect = app.add_subcommand("expect", "estimate a diagonal observable on the main register");
  c_expect->add_option("pattern", pattern_path, "pattern JSON")->required();
  c_expect->add_option("hamiltonian", ham_path, "Hamiltonian text file (Z words only)")->required();
  add_seed(c_expect);
  add_shots(c_expect);

  // export-dot
  auto* c_dot = app.add_subcommand("export-dot", "write the pattern's graph state as DOT");
  c_dot->add_option("pattern", pattern_path, "pattern JSON")->required();
  c_dot->add_option("-o,--output", out_path, "output DOT file (default stdout)");

  // demos
  auto* c_qaoa = app.add_subcommand("demo-qaoa", "QAOA max-cut on four vertices through the hybrid executor");
  add_seed(c_qaoa);
  add_shots(c_qaoa);
  auto* c_vqe = app.add_subcommand("demo-vqe", "water VQE ansatz: four Hamiltonian groups through the hybrid executor");
  add_seed(c_vqe);
  add_shots(c_vqe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const std::uint64_t seed = resolve_seed(common);

    if (*c_compile) {
      auto spec = circuit_spec_from_json(read_json(circuit_path));
      CompileOptions opt;
      opt.optimize_depth = !no_optimize;
      auto p = compile(spec.steps, spec.num_qubits, layout_from_name(layout_name_opt), spec.initial, opt);
      if (graph_form) p = to_graph_form(p);
      write_json(out_path, to_json(p));
      auto r = depth_report(p);
      std::cerr << "measurements " << r.measurements << ", ancillas " << r.ancilla_count << ", entangling layers "
                << r.entangling_layers << ", two-qubit gates " << r.two_qubit_gates << ", parallel groups "
                << r.parallel_groups << "\n";
      return kPass;
    }

    if (*c_anneal) {
      auto p = ensure_graph_form(pattern_from_json(read_json(pattern_path)));
      auto cost = CostFunction::parse(cost_name);
      schedule.validate();
      if (!dot_before.empty()) write_text(dot_before, p.graph->graph.to_dot());
      auto r = anneal_restarts(p.graph->graph, cost, schedule, restarts, seed);
      p.graph->graph = r.best;
      if (!dot_after.empty()) write_text(dot_after, r.best.to_dot());
      if (!trace_path.empty()) write_json(trace_path, to_json(r, cost, schedule));
      write_json(out_path, to_json(p));
      std::cerr << "cost " << fmt(r.initial_cost) << " -> " << fmt(r.best_cost) << " (" << cost.name() << ")\n";
      return kPass;
    }

    if (*c_sample) {
      auto p = ensure_graph_form(pattern_from_json(read_json(pattern_path)));
      write_json(out_path, to_json(execute(p, common.shots, seed, common.threads)));
      return kPass;
    }

    if (*c_verify) {
      auto spec = circuit_spec_from_json(read_json(circuit_path));
      auto p = pattern_from_json(read_json(pattern_path));
      if (p.main_qubits != spec.num_qubits) throw SchemaError("pattern and circuit sizes differ");
      StateVector ideal(spec.num_qubits);
      ideal.apply(spec.initial);
      apply_steps(ideal, spec.steps);
      bool ok;
      if (mode == "branches") {
        const double tol = tolerance < 0 ? 1e-9 : tolerance;
        StateVector input(spec.num_qubits);
        input.apply(spec.initial);
        StandardFormPattern plain = p;
        plain.graph.reset();
        auto r = branch_check(plain, ideal, &input);
        const double dev = 1.0 - r.min_fidelity;
        ok = dev <= tol && std::abs(r.total_probability - 1.0) <= 1e-9 && r.ancillas_restored;
        std::cout << (ok ? "PASS" : "FAIL") << " branches " << r.branches << " max deviation " << fmt(dev)
                  << " probability " << fmt(r.total_probability) << "\n";
      } else {
        const double tol = tolerance < 0 ? 0.02 : tolerance;
        auto got = to_distribution(execute(ensure_graph_form(p), common.shots, seed, common.threads));
        auto want = to_distribution(ideal, demos::register_qubits(spec.num_qubits));
        const double tvd = total_variation(want, got);
        ok = tvd <= tol;
        std::cout << (ok ? "PASS" : "FAIL") << " shots " << common.shots << " total variation " << fmt(tvd) << "\n";
      }
      return ok ? kPass : kFail;
    }

    if (*c_expect) {
      auto p = ensure_graph_form(pattern_from_json(read_json(pattern_path)));
      Hamiltonian h;
      try {
        h = Hamiltonian::parse(read_file(ham_path));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(ham_path + ": " + e.what());
      }
      auto e = expectation(p, h, common.shots, seed, common.threads);
      std::cout << fmt(e.value) << " +- " << fmt(e.standard_error) << "\n";
      return kPass;
    }

    if (*c_dot) {
      auto p = ensure_graph_form(pattern_from_json(read_json(pattern_path)));
      std::vector<std::string> labels(p.total_qubits());
      for (Qubit q = 0; q < p.total_qubits(); ++q) labels[q] = "a" + std::to_string(q);
      for (Qubit q = 0; q < p.main_qubits; ++q) labels[p.output_wires[q]] = "m" + std::to_string(q);
      write_text(out_path, p.graph->graph.to_dot(labels));
      return kPass;
    }

    if (*c_qaoa) {
      auto p = demos::qaoa_pattern();
      auto counts = execute(p, common.shots, seed, common.threads);
      auto ideal = to_distribution(demos::qaoa_state(), demos::register_qubits(4));
      const double f = hellinger_normalized(ideal, to_distribution(counts), 4);
      auto top = demos::top_two(counts);
      std::sort(top.begin(), top.end());
      const bool ok = top == std::vector<std::string>{"0100", "1011"};
      std::cout << "QAOA gamma " << fixtures::kQaoaGamma << " beta " << fixtures::kQaoaBeta << ", " << common.shots
                << " shots, " << p.ancilla_qubits << " ancillas\n";
      print_counts(counts, 16);
      std::cout << "normalized fidelity vs statevector " << fmt(f) << "\n";
      std::cout << (ok ? "PASS" : "FAIL") << " top two strings " << (top.size() > 0 ? top[0] : "") << " "
                << (top.size() > 1 ? top[1] : "") << "\n";
      return ok ? kPass : kFail;
    }

    if (*c_vqe) {
      auto state = demos::water_state();
      bool ok = true;
      std::cout << "water ansatz on |0000111111>, " << common.shots << " shots per group\n";
      std::cout << "group  reference  statevector  hybrid        stderr\n";
      for (std::size_t k = 0; k < 4; ++k) {
        auto gp = demos::water_group_pattern(k);
        const double exact = expectation(state, fixtures::water_group(k));
        auto e = expectation(gp.pattern, gp.observable, common.shots, derive_seed(seed, k), common.threads);
        const bool good = std::abs(exact - fixtures::kWaterIdeal[k]) <= 1e-3 &&
                          std::abs(e.value - exact) <= 3 * e.standard_error + 1e-12;
        ok = ok && good;
        std::cout << "H" << k + 1 << "     " << std::setw(9) << fmt(fixtures::kWaterIdeal[k]) << "  " << std::setw(11)
                  << fmt(exact) << "  " << std::setw(12) << fmt(e.value) << "  " << fmt(e.standard_error)
                  << (good ? "" : "  *") << "\n";
      }
      std::cout << (ok ? "PASS" : "FAIL") << "\n";
      return ok ? kPass : kFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

// Copyright 2026 ionforge contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "ionforge/circuit.hpp"
#include "ionforge/config.hpp"
#include "ionforge/environment.hpp"
#include "ionforge/gatekit.hpp"
#include "ionforge/reportio.hpp"
#include "ionforge/shiftrules.hpp"
#include "ionforge/targets.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ionforge;

constexpr int kExitSuccess = 0;
constexpr int kExitNotAchieved = 1;
constexpr int kExitError = 2;

// Priority: --out flag, then [run] out_dir, then IONFORGE_OUT_DIR, then cwd.
std::string resolve_out_dir(const std::string& flag_value,
                            const std::string& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (!config_value.empty()) return config_value;
  if (const char* env_dir = std::getenv("IONFORGE_OUT_DIR");
      env_dir != nullptr && *env_dir != '\0') {
    return env_dir;
  }
  return ".";
}

std::string ensure_dir(const std::string& dir) {
  fs::create_directories(dir);
  return dir;
}

struct CompileArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
};

int cmd_compile(const CompileArgs& args) {
  config::RunConfig cfg = config::parse_config_file(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (args.workers > 0) cfg.workers = args.workers;
  cfg.environment.target = targets::build_target(cfg.target);

  const std::string out_dir =
      ensure_dir(resolve_out_dir(args.out_dir, cfg.out_dir));

  const env::EnsembleResult result =
      env::run_ensemble(cfg.environment, cfg.agent, cfg.agents, cfg.seed,
                        cfg.workers, cfg.timing);

  reportio::write_episodes_csv(out_dir + "/episodes.csv", result);
  reportio::write_summary_json(out_dir + "/summary.json", cfg, result);

  const env::TrainResult& best =
      result.agents[static_cast<std::size_t>(result.best_agent)];
  reportio::write_circuit_file(out_dir + "/best_circuit.txt",
                               best.best_circuit, best.best_params,
                               best.best_cost);

  bool any_reached = false;
  for (const env::TrainResult& t : result.agents) {
    any_reached = any_reached || t.reached_eps_min;
  }
  std::printf("compile: agents=%d best_agent=%d length=%d cost=%.3e %s\n",
              cfg.agents, result.best_agent,
              static_cast<int>(best.best_circuit.gates.size()), best.best_cost,
              any_reached ? "(eps_min reached)" : "(eps_min NOT reached)");
  std::printf("compile: wrote %s/{episodes.csv,summary.json,best_circuit.txt}\n",
              out_dir.c_str());
  return any_reached ? kExitSuccess : kExitNotAchieved;
}

struct BenchArgs {
  int n_min = 2;
  int n_max = 8;
  int repetitions = 20;
  std::string out_dir;
  std::uint64_t seed = 12345;
};

int cmd_bench_gates(const BenchArgs& args) {
  using clock = std::chrono::steady_clock;
  if (args.n_min < 1 || args.n_max > 12 || args.n_min > args.n_max) {
    std::fprintf(stderr, "bench-gates: need 1 <= n-min <= n-max <= 12\n");
    return kExitError;
  }
  const std::string out_dir = ensure_dir(resolve_out_dir(args.out_dir, ""));
  const std::string csv_path = out_dir + "/bench_gates.csv";
  std::FILE* csv = std::fopen(csv_path.c_str(), "w");
  if (csv == nullptr) {
    std::fprintf(stderr, "bench-gates: cannot open %s\n", csv_path.c_str());
    return kExitError;
  }
  std::fprintf(csv, "# ionforge-bench v1\n");
  std::fprintf(csv, "n,method,calls,total_ms,mean_us\n");

  std::mt19937_64 rng(args.seed);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int n = args.n_min; n <= args.n_max; ++n) {
    const gatekit::GateTables tables(n);  // cached once, outside the timing
    std::vector<gatekit::GateParams> params(
        static_cast<std::size_t>(args.repetitions));
    for (auto& p : params) p = {angle(rng), angle(rng)};

    double fast_ms = 0.0;
    double oracle_ms = 0.0;
    double max_err = 0.0;
    for (const auto& p : params) {
      const auto t0 = clock::now();
      const ComplexMatrix fast_ms_gate = gatekit::ms_unitary(tables, p);
      const ComplexMatrix fast_cxy_gate = gatekit::cxy_unitary(tables, p);
      const auto t1 = clock::now();
      const ComplexMatrix oracle_ms_gate = gatekit::ms_unitary_oracle(n, p);
      const ComplexMatrix oracle_cxy_gate = gatekit::cxy_unitary_oracle(n, p);
      const auto t2 = clock::now();
      fast_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
      oracle_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
      max_err = std::max(
          max_err, (fast_ms_gate - oracle_ms_gate).cwiseAbs().maxCoeff());
      max_err = std::max(
          max_err, (fast_cxy_gate - oracle_cxy_gate).cwiseAbs().maxCoeff());
    }
    const int calls = 2 * args.repetitions;  // one MS + one CXY per rep
    std::fprintf(csv, "%d,fast,%d,%.17g,%.17g\n", n, calls, fast_ms,
                 1000.0 * fast_ms / calls);
    std::fprintf(csv, "%d,oracle,%d,%.17g,%.17g\n", n, calls, oracle_ms,
                 1000.0 * oracle_ms / calls);
    std::printf(
        "bench-gates: n=%d speedup=%.1fx (fast %.3f ms, oracle %.3f ms, "
        "agreement %.2e)\n",
        n, oracle_ms / fast_ms, fast_ms, oracle_ms, max_err);
    if (max_err > 1e-10) {
      std::fclose(csv);
      std::fprintf(stderr,
                   "bench-gates: fast/oracle disagreement %.3e at n=%d\n",
                   max_err, n);
      return kExitError;
    }
  }
  std::fclose(csv);
  std::printf("bench-gates: wrote %s\n", csv_path.c_str());
  return kExitSuccess;
}

struct CheckGradsArgs {
  int n_qubits = 3;
  int length = 6;
  int trials = 20;
  std::uint64_t seed = 7;
};

int cmd_check_grads(const CheckGradsArgs& args) {
  if (args.n_qubits > 6) {
    std::fprintf(stderr, "check-grads: n > 6 not supported (slow path)\n");
    return kExitError;
  }
  const shiftrules::ValidationReport report = shiftrules::validate_rules(
      args.n_qubits, args.trials, args.length, args.seed);
  std::printf("check-grads: n=%d trials=%d max_len=%d seed=%llu\n",
              args.n_qubits, args.trials, args.length,
              static_cast<unsigned long long>(args.seed));
  std::printf("  analytic vs finite-difference: max_err=%.3e (gate 1e-6)\n",
              report.fallback_max_error);
  for (const shiftrules::RuleReport& r : report.rules) {
    std::printf("  rule %-9s max_err=%.3e tol=%.0e slots=%d %s\n",
                r.rule.c_str(), r.max_abs_error, r.tolerance, r.slots_checked,
                r.passed ? "PASS" : "FAIL (finite-difference fallback)");
  }
  const shiftrules::RuleReport* z = shiftrules::find_rule(report, "z-theta");
  const bool ok = report.fallback_max_error <= 1e-6 && z != nullptr &&
                  z->max_abs_error <= 1e-6 && z->slots_checked > 0;
  std::printf("check-grads: %s\n", ok ? "OK" : "FAILED");
  return ok ? kExitSuccess : kExitNotAchieved;
}

struct LayerSearchArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int cmd_layer_search(const LayerSearchArgs& args) {
  config::RunConfig cfg = config::parse_config_file(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  cfg.layer_search.opt.seed = cfg.seed;
  const ComplexMatrix target = targets::build_target(cfg.target);
  const std::string out_dir =
      ensure_dir(resolve_out_dir(args.out_dir, cfg.out_dir));

  targets::LayerSearchResult res;
  try {
    res = targets::layer_search(target, cfg.target.n_qubits, cfg.layer_search);
  } catch (const std::runtime_error& e) {
    // Budget refusals land here with the enumeration estimate in the text.
    std::fprintf(stderr, "layer-search: %s\n", e.what());
    return kExitError;
  }

  if (res.found) {
    reportio::write_circuit_file(out_dir + "/layer_circuit.txt", res.circuit,
                                 res.params, res.cost);
    std::printf(
        "layer-search: found at %d layer(s), cost=%.3e, combinations=%llu\n",
        res.n_layers, res.cost,
        static_cast<unsigned long long>(res.combinations_tried));
    std::printf("layer-search: wrote %s/layer_circuit.txt\n", out_dir.c_str());
    return kExitSuccess;
  }
  std::printf(
      "layer-search: not found (best cost %.3e after %llu combinations)\n",
      res.cost, static_cast<unsigned long long>(res.combinations_tried));
  return kExitNotAchieved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ionforge: hybrid discrete/continuous compiler for trapped-ion "
      "circuits"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  CLI::App* compile =
      app.add_subcommand("compile", "Train a gate-placement ensemble");
  compile->add_option("--config", compile_args.config_path, "Experiment file")
      ->required();
  compile->add_option("--out", compile_args.out_dir, "Output directory");
  CLI::Option* compile_seed =
      compile->add_option("--seed", compile_args.seed, "Override [run] seed");
  compile->add_option("--workers", compile_args.workers,
                      "Override [run] workers");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench-gates", "Time cached gate kernel vs eigendecomposition oracle");
  bench->add_option("--n-min", bench_args.n_min, "Smallest register");
  bench->add_option("--n-max", bench_args.n_max, "Largest register (<= 12)");
  bench->add_option("--reps", bench_args.repetitions, "Samples per size");
  bench->add_option("--out", bench_args.out_dir, "Output directory");
  bench->add_option("--seed", bench_args.seed, "Angle sampling seed");

  CheckGradsArgs grads_args;
  CLI::App* grads = app.add_subcommand(
      "check-grads", "Cross-check analytic gradients and shift rules");
  grads->add_option("--n", grads_args.n_qubits, "Register size (<= 6)");
  grads->add_option("--length", grads_args.length, "Max circuit length");
  grads->add_option("--trials", grads_args.trials, "Random circuits");
  grads->add_option("--seed", grads_args.seed, "Sampling seed");

  LayerSearchArgs layer_args;
  CLI::App* layer = app.add_subcommand(
      "layer-search", "Exhaustive layer-ansatz search for a target");
  layer->add_option("--config", layer_args.config_path, "Experiment file")
      ->required();
  layer->add_option("--out", layer_args.out_dir, "Output directory");
  CLI::Option* layer_seed =
      layer->add_option("--seed", layer_args.seed, "Override [run] seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(compile)) {
      compile_args.seed_set = compile_seed->count() > 0;
      return cmd_compile(compile_args);
    }
    if (app.got_subcommand(bench)) return cmd_bench_gates(bench_args);
    if (app.got_subcommand(grads)) return cmd_check_grads(grads_args);
    if (app.got_subcommand(layer)) {
      layer_args.seed_set = layer_seed->count() > 0;
      return cmd_layer_search(layer_args);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}

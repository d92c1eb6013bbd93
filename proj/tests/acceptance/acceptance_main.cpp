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

// Release acceptance suite: ten checks, one PASS/FAIL line each, exit 0 only
// when all pass. Heavier and more end-to-end than the unit tests; the tenth
// check drives the real command-line binary (path passed via --cli).

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ionforge/agent.hpp"
#include "ionforge/circuit.hpp"
#include "ionforge/environment.hpp"
#include "ionforge/gatekit.hpp"
#include "ionforge/linalg.hpp"
#include "ionforge/shiftrules.hpp"
#include "ionforge/targets.hpp"

namespace {

using ionforge::Complex;
using ionforge::ComplexMatrix;
using ionforge::ParamVector;
namespace agent = ionforge::agent;
namespace circuit = ionforge::circuit;
namespace env = ionforge::env;
namespace gatekit = ionforge::gatekit;
namespace linalg = ionforge::linalg;
namespace shiftrules = ionforge::shiftrules;
namespace targets = ionforge::targets;

struct CheckResult {
  bool passed = false;
  std::vector<std::string> details;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

// ---------------------------------------------------------------------------
// 1. Gate kernels against the eigendecomposition oracle.

CheckResult check_kernel_oracle() {
  CheckResult res;
  std::mt19937_64 rng(20260819);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    gatekit::GateTables t(n);
    double worst_n = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      gatekit::GateParams p{2 * M_PI * normal(rng), 2 * M_PI * normal(rng)};
      worst_n = std::max(
          {worst_n,
           max_abs_diff(gatekit::cxy_unitary(t, p), gatekit::cxy_unitary_oracle(n, p)),
           max_abs_diff(gatekit::ms_unitary(t, p), gatekit::ms_unitary_oracle(n, p))});
      const int q = 1 + static_cast<int>(rep % n);
      worst_n = std::max(worst_n, max_abs_diff(gatekit::z_unitary(n, q, p.theta),
                                               gatekit::z_unitary_oracle(n, q, p.theta)));
    }
    res.details.push_back(fmt("n=%d max element error %.3e", n, worst_n));
    worst = std::max(worst, worst_n);
  }
  res.passed = worst <= 1e-10;
  res.details.push_back(fmt("overall %.3e (tolerance 1e-10)", worst));
  return res;
}

// ---------------------------------------------------------------------------
// 2. Analytic circuit gradient against central finite differences.

CheckResult check_gradients() {
  CheckResult res;
  const double h = 1e-6;
  std::mt19937_64 rng(77001);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  int circuits = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rep % 4;
    gatekit::GateTables t(n);
    std::uniform_int_distribution<int> len_dist(1, 8);
    circuit::Circuit c = circuit::random_circuit(n, len_dist(rng), rng);
    circuit::Circuit tc = circuit::random_circuit(n, len_dist(rng), rng);
    ParamVector tp(circuit::param_count(tc));
    for (int i = 0; i < tp.size(); ++i) tp[i] = 2 * M_PI * normal(rng);
    ComplexMatrix target = circuit::circuit_unitary(tc, tp, t);
    ParamVector p(circuit::param_count(c));
    for (int i = 0; i < p.size(); ++i) p[i] = 2 * M_PI * normal(rng);

    circuit::GradResult g = circuit::grape_gradient(c, p, target, t);
    for (int k = 0; k < p.size(); ++k) {
      ParamVector up = p, dn = p;
      up[k] += h;
      dn[k] -= h;
      const double fd = (circuit::fidelity_cost(c, up, target, t) -
                         circuit::fidelity_cost(c, dn, target, t)) /
                        (2 * h);
      worst = std::max(worst, std::abs(g.grad[k] - fd));
    }
    ++circuits;
  }
  res.passed = worst <= 1e-6;
  res.details.push_back(
      fmt("%d circuits, max |analytic - FD| = %.3e (tolerance 1e-6)", circuits, worst));
  return res;
}

// ---------------------------------------------------------------------------
// 3. Shift-rule validation: exact Z rule, recorded pass/fail for the rest.

CheckResult check_shift_rules() {
  CheckResult res;
  shiftrules::ValidationReport rep = shiftrules::validate_rules(2, 24, 8, 4242);
  res.passed = true;

  const shiftrules::RuleReport* z = shiftrules::find_rule(rep, "z-theta");
  if (z == nullptr || !z->passed || z->max_abs_error > 1e-8) res.passed = false;
  if (z != nullptr) {
    res.details.push_back(
        fmt("z-theta: %s, max error %.3e (required <= 1e-8)",
            z->passed ? "validated" : "FAILED", z->max_abs_error));
  }

  for (const char* name : {"cxy-theta", "ms-theta", "phi"}) {
    const shiftrules::RuleReport* r = shiftrules::find_rule(rep, name);
    if (r == nullptr || r->slots_checked == 0) {
      res.passed = false;
      res.details.push_back(fmt("%s: no recorded verdict", name));
      continue;
    }
    res.details.push_back(fmt(
        "%s: %s at 1e-6 (max error %.3e over %d slots)%s", name,
        r->passed ? "validated" : "did not validate", r->max_abs_error,
        r->slots_checked, r->passed ? "" : "; falls back to finite differences"));
  }
  res.details.push_back(
      fmt("finite-difference fallback max error %.3e (tolerance 1e-6)",
          rep.fallback_max_error));
  if (rep.fallback_max_error > 1e-6) res.passed = false;
  return res;
}

// ---------------------------------------------------------------------------
// 4. Exhaustive-search combinatorics.

CheckResult check_combinatorics() {
  CheckResult res;
  const targets::BigCount c33 = targets::combinations_count(3, 3);
  const targets::BigCount c45 = targets::combinations_count(4, 5);
  const bool c33_ok = c33 == targets::BigCount(1049591);
  const bool c45_ok =
      c45 > (targets::BigCount(1) << 35) && c45 < (targets::BigCount(1) << 37);
  std::ostringstream ss;
  ss << "combinations_count(3,3) = " << c33 << " (expected 1049591)";
  res.details.push_back(ss.str());
  ss.str("");
  ss << "combinations_count(4,5) = " << c45 << " (~2^36: "
     << (c45_ok ? "yes" : "NO") << ")";
  res.details.push_back(ss.str());
  res.passed = c33_ok && c45_ok;
  return res;
}

// ---------------------------------------------------------------------------
// 5. Desk-scale Toffoli-3 compilation with learning-curve properties.

struct ToffoliRun {
  bool solved = false;
  int best_length = 0;
  double best_cost = 1.0;
  bool ma_ok = false;
  bool curriculum_ok = false;
  double final_eps = 1.0;
  double ma_first = 0.0;
  double ma_last = 0.0;
  double worst_dip = 0.0;
};

ToffoliRun run_toffoli(std::uint64_t base_seed, int n_agents, int e_max) {
  env::EnvConfig cfg;
  cfg.n_qubits = 3;
  cfg.target = targets::toffoli(3);
  cfg.l_max = 14;
  cfg.e_max = e_max;
  cfg.eps_min = 1e-2;
  // Window 1 collapses the opening phase in which every episode crosses the
  // untightened threshold; with the default window that phase dominates a
  // desk-scale run and the free mid rewards mask the learning signal.
  cfg.curriculum_window = 1;
  cfg.opt.max_iterations = 100;
  cfg.opt.n_restarts = 10;

  agent::PsConfig ps;  // defaults; n_actions/total_episodes derived inside
  env::EnsembleResult ens =
      env::run_ensemble(cfg, ps, n_agents, base_seed, 1, env::TimingMode::None);

  ToffoliRun out;
  std::vector<double> mean_reward(static_cast<std::size_t>(e_max), 0.0);
  bool eps_monotone = true;
  for (const env::TrainResult& tr : ens.agents) {
    if (tr.reached_eps_min &&
        (!out.solved ||
         static_cast<int>(tr.best_circuit.gates.size()) < out.best_length)) {
      out.solved = true;
      out.best_length = static_cast<int>(tr.best_circuit.gates.size());
      out.best_cost = tr.best_cost;
    }
    double prev_eps = 1.0;
    for (const env::EpisodeLog& log : tr.logs) {
      double total = 0.0;
      for (const env::StepRecord& s : log.steps) {
        total += s.reward;
        if (s.eps_t > prev_eps + 1e-15) eps_monotone = false;
        prev_eps = s.eps_t;
      }
      mean_reward[static_cast<std::size_t>(log.episode)] +=
          total / static_cast<double>(n_agents);
    }
  }

  // Trailing 500-episode moving average of the agent-averaged episode reward.
  const int w = 500;
  std::vector<double> ma;
  double acc = 0.0;
  for (int i = 0; i < e_max; ++i) {
    acc += mean_reward[static_cast<std::size_t>(i)];
    if (i >= w) acc -= mean_reward[static_cast<std::size_t>(i - w)];
    if (i >= w - 1) ma.push_back(acc / w);
  }
  out.ma_first = ma.front();
  out.ma_last = ma.back();
  // Non-decreasing up to a small slack absorbing single-episode noise in the
  // stochastic reward stream (scale: reward_full = 10).
  const double slack = 0.25;
  out.ma_ok = true;
  for (std::size_t i = 1; i < ma.size(); ++i) {
    out.worst_dip = std::max(out.worst_dip, ma[i - 1] - ma[i]);
    if (ma[i] < ma[i - 1] - slack) out.ma_ok = false;
  }
  if (ma.back() < ma.front()) out.ma_ok = false;

  // Curriculum: every agent monotone non-increasing; the threshold must have
  // moved decisively toward eps_min for the run to count as converging.
  double final_eps = 1.0;
  for (const env::TrainResult& tr : ens.agents) {
    if (!tr.logs.empty() && !tr.logs.back().steps.empty()) {
      final_eps = std::min(final_eps, tr.logs.back().steps.back().eps_t);
    }
  }
  out.final_eps = final_eps;
  out.curriculum_ok = eps_monotone && final_eps <= 0.02;
  return out;
}

CheckResult check_toffoli_compilation() {
  CheckResult res;
  const int n_agents = 5;
  const int e_max = 2500;
  ToffoliRun run = run_toffoli(90210, n_agents, e_max);
  bool retried = false;
  if (!(run.solved && run.ma_ok && run.curriculum_ok)) {
    // The criterion is stochastic; one retry with a fresh seed is allowed.
    retried = true;
    res.details.push_back("first attempt incomplete; retrying with a new seed");
    res.details.push_back(fmt(
        "  (attempt 1: solved=%d len=%d ma_ok=%d curriculum_ok=%d eps=%.4f)",
        run.solved, run.best_length, run.ma_ok, run.curriculum_ok,
        run.final_eps));
    run = run_toffoli(31337, n_agents, e_max);
  }
  res.passed = run.solved && run.best_length <= 14 && run.best_cost <= 1e-2 &&
               run.ma_ok && run.curriculum_ok;
  res.details.push_back(fmt("%d agents x %d episodes%s", n_agents, e_max,
                            retried ? " (second attempt)" : ""));
  if (run.solved) {
    res.details.push_back(
        fmt("best circuit: length %d at cost %.3e (reference length: 10; "
            "required <= 14 at cost <= 1e-2)",
            run.best_length, run.best_cost));
  } else {
    res.details.push_back("no agent reached cost <= 1e-2");
  }
  res.details.push_back(fmt(
      "reward MA(500): %.3f -> %.3f, worst dip %.3f (slack 0.25): %s",
      run.ma_first, run.ma_last, run.worst_dip, run.ma_ok ? "non-decreasing" : "FAILED"));
  res.details.push_back(fmt(
      "curriculum threshold: monotone, final eps_t %.4f (<= 0.02 required): %s",
      run.final_eps, run.curriculum_ok ? "ok" : "FAILED"));
  return res;
}

// ---------------------------------------------------------------------------
// 6. Cached-kernel speedup over the oracle. The advantage must hold at every
// n >= 6 with a 5x floor at n = 8; the ratio curve itself is
// environment-dependent (the oracle eigensolver's cost scales unevenly
// across dimension crossovers), so it is reported rather than asserted.

CheckResult check_speedup() {
  CheckResult res;
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(5150);
  std::normal_distribution<double> normal;
  res.passed = true;
  std::vector<double> curve;
  for (int n = 6; n <= 8; ++n) {
    gatekit::GateTables t(n);
    const int reps = 15;
    std::vector<double> fast_ms, oracle_ms;
    double agree = 0.0;
    for (int r = 0; r < reps; ++r) {
      gatekit::GateParams p{2 * M_PI * normal(rng), 2 * M_PI * normal(rng)};
      const auto f0 = clock::now();
      ComplexMatrix fc = gatekit::cxy_unitary(t, p);
      ComplexMatrix fm = gatekit::ms_unitary(t, p);
      const auto f1 = clock::now();
      ComplexMatrix oc = gatekit::cxy_unitary_oracle(n, p);
      ComplexMatrix om = gatekit::ms_unitary_oracle(n, p);
      const auto f2 = clock::now();
      fast_ms.push_back(std::chrono::duration<double, std::milli>(f1 - f0).count());
      oracle_ms.push_back(std::chrono::duration<double, std::milli>(f2 - f1).count());
      agree = std::max({agree, max_abs_diff(fc, oc), max_abs_diff(fm, om)});
    }
    const double speedup = median(oracle_ms) / median(fast_ms);
    curve.push_back(speedup);
    res.details.push_back(
        fmt("n=%d: fast %.3f ms, oracle %.3f ms, speedup %.1fx, agreement %.2e",
            n, median(fast_ms), median(oracle_ms), speedup, agree));
    if (agree > 1e-10) {
      res.passed = false;
      res.details.push_back(fmt("n=%d agreement above 1e-10", n));
    }
    if (speedup <= 1.0) {
      res.passed = false;
      res.details.push_back(fmt("no advantage at n=%d", n));
    }
    if (n == 8 && speedup < 5.0) {
      res.passed = false;
      res.details.push_back("speedup at n=8 below the 5x floor");
    }
  }
  const bool rising = std::is_sorted(curve.begin(), curve.end());
  res.details.push_back(fmt(
      "advantage sustained at every n in 6..8; ratio curve %s over n "
      "(informational; host-dependent)",
      rising ? "non-decreasing" : "not monotone"));
  return res;
}

// ---------------------------------------------------------------------------
// 7. Projective-simulation update algebra.

CheckResult check_ps_algebra() {
  CheckResult res;
  res.passed = true;

  agent::PsConfig cfg;
  cfg.n_actions = 4;
  agent::Ecm ecm(cfg);

  // First rewarded traversal: h' = 1 + R exactly.
  ecm.mark({}, 2);
  ecm.update(10.0);
  const bool first_ok = ecm.h_value({}, 2) == 11.0;
  res.details.push_back(fmt("first traversal h = 1 + R: %s",
                            first_ok ? "exact" : "FAILED"));
  if (!first_ok) res.passed = false;

  // Glow decays by (1 - eta)^k.
  agent::Ecm ecm2(cfg);
  ecm2.mark({}, 0);
  bool glow_ok = true;
  for (int k = 1; k <= 6; ++k) {
    ecm2.update(0.0);
    if (std::abs(ecm2.glow({}, 0) - std::pow(0.9, k)) > 1e-12) glow_ok = false;
  }
  res.details.push_back(fmt("glow decay (1-eta)^k: %s", glow_ok ? "exact" : "FAILED"));
  if (!glow_ok) res.passed = false;

  // Softmax normalization across beta and h spreads.
  double worst_norm = 0.0;
  for (double beta : {0.0, 1e-3, 1.0, 50.0}) {
    std::vector<double> p = ecm.policy({}, beta);
    double sum = 0.0;
    for (double v : p) sum += v;
    worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
  }
  res.details.push_back(fmt("softmax normalization defect %.2e (<= 1e-12)", worst_norm));
  if (worst_norm > 1e-12) res.passed = false;

  // Damped relaxation: with R = 0 the h-values return to 1.
  agent::PsConfig fast = cfg;
  fast.damping = 0.1;
  agent::Ecm ecm3(fast);
  ecm3.mark({}, 1);
  ecm3.update(10.0);
  for (int k = 0; k < 200; ++k) ecm3.update(0.0);
  const double resid = std::abs(ecm3.h_value({}, 1) - 1.0);
  res.details.push_back(fmt("h relaxation residual after 200 zero-reward updates: %.2e",
                            resid));
  if (resid > 1e-6) res.passed = false;
  return res;
}

// ---------------------------------------------------------------------------
// 8. Curriculum geometric descent.

CheckResult check_curriculum() {
  CheckResult res;
  env::EnvConfig cfg;
  cfg.eps_min = 1e-2;
  env::CurriculumState cs{1.0, 0};
  res.passed = true;
  for (int k = 1; k <= 10; ++k) {
    cs = env::update_curriculum(cs, cfg);
    const double expect = 1e-2 + (1.0 - 1e-2) * std::pow(0.5, k);
    if (std::abs(cs.eps_t - expect) > 1e-12 || cs.eps_t < 1e-2 || cs.eps_t > 1.0) {
      res.passed = false;
    }
  }
  res.details.push_back(fmt(
      "10 updates from 1.0: final eps_t %.8f vs geometric %.8f, in [1e-2, 1]: %s",
      cs.eps_t, 1e-2 + 0.99 * std::pow(0.5, 10), res.passed ? "yes" : "NO"));
  return res;
}

// ---------------------------------------------------------------------------
// 9. Benchmark-target properties.

CheckResult check_targets() {
  CheckResult res;
  res.passed = true;

  ComplexMatrix tof = targets::toffoli(3);
  const double invol = max_abs_diff(ComplexMatrix(tof * tof), linalg::identity(8));
  res.details.push_back(fmt("Toffoli involution defect %.2e", invol));
  if (invol > 1e-14) res.passed = false;

  ComplexMatrix u = targets::xxz_unitary(3, 0.3, 0.7, 0.25, 0.8);
  ComplexMatrix sz = gatekit::collective_z(3);
  const double comm = max_abs_diff(ComplexMatrix(u * sz), ComplexMatrix(sz * u));
  res.details.push_back(fmt("XXZ magnetization commutation defect %.2e (<= 1e-10)", comm));
  if (comm > 1e-10) res.passed = false;

  ComplexMatrix u1 = targets::xxz_unitary(3, 0.3, 0.7, 0.25, 0.5);
  ComplexMatrix u2 = targets::xxz_unitary(3, 0.3, 0.7, 0.25, 0.3);
  ComplexMatrix u3 = targets::xxz_unitary(3, 0.3, 0.7, 0.25, 0.8);
  const double addit = max_abs_diff(ComplexMatrix(u1 * u2), u3);
  res.details.push_back(fmt("XXZ time additivity defect %.2e (<= 1e-9)", addit));
  if (addit > 1e-9) res.passed = false;

  ComplexMatrix ucc = targets::ucc_unitary(3, 0.21);
  double outside = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if ((i == 0 || i == 7) && (j == 0 || j == 7)) continue;
      const Complex expect = i == j ? Complex(1, 0) : Complex(0, 0);
      outside = std::max(outside, std::abs(ucc(i, j) - expect));
    }
  }
  res.details.push_back(
      fmt("UCC identity outside the corner subspace: defect %.2e (<= 1e-10)", outside));
  if (outside > 1e-10) res.passed = false;
  return res;
}

// ---------------------------------------------------------------------------
// 10. End-to-end determinism of the command-line compile path.

CheckResult check_cli_determinism(const std::string& cli) {
  CheckResult res;
  if (cli.empty()) {
    res.details.push_back("no --cli path given");
    return res;
  }
  const std::string base = "/tmp/ionforge-acceptance-" + std::to_string(::getpid());
  const std::string cfg_path = base + "-cfg.ini";
  {
    std::ofstream out(cfg_path);
    // Window 1 tightens the threshold during even this short run, so the
    // logged stream covers varied eps_t values and multi-step episodes.
    out << "[target]\nkind = toffoli\nn = 3\n"
        << "[environment]\nl_max = 6\ne_max = 15\ncurriculum_window = 1\n"
        << "[optimizer]\nmax_iterations = 40\nn_restarts = 4\n"
        << "[run]\nagents = 2\nseed = 424242\n";
  }
  auto run_once = [&](const std::string& dir) {
    const std::string cmd = cli + " compile --config " + cfg_path + " --out " + dir +
                            " > " + dir + "-stdout.txt 2>&1";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const int rc1 = run_once(base + "-a");
  const int rc2 = run_once(base + "-b");
  // 0 = target reached, 1 = ran to completion without reaching it; 2 would
  // mean the config never ran and the byte comparison is vacuous.
  const bool healthy = WIFEXITED(rc1) && WEXITSTATUS(rc1) <= 1;
  res.details.push_back(fmt("compile exit codes %d and %d%s",
                            WIFEXITED(rc1) ? WEXITSTATUS(rc1) : -1,
                            WIFEXITED(rc2) ? WEXITSTATUS(rc2) : -1,
                            healthy ? "" : " (unhealthy run)"));
  const std::string csv_a = slurp(base + "-a/episodes.csv");
  const std::string csv_b = slurp(base + "-b/episodes.csv");
  const bool csv_ok = !csv_a.empty() && csv_a == csv_b;
  res.details.push_back(fmt("episodes.csv: %zu bytes, runs %s", csv_a.size(),
                            csv_ok ? "byte-identical" : "DIFFER"));
  const std::string best_a = slurp(base + "-a/best_circuit.txt");
  const std::string best_b = slurp(base + "-b/best_circuit.txt");
  res.details.push_back(fmt("best_circuit.txt: runs %s",
                            best_a == best_b && !best_a.empty() ? "byte-identical"
                                                                 : "DIFFER"));
  res.passed = rc1 == rc2 && healthy && csv_ok && best_a == best_b && !best_a.empty();
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s --cli <path-to-binary> [--only N]\n", argv[0]);
      return 2;
    }
  }

  struct Check {
    const char* name;
    std::function<CheckResult()> run;
  };
  const std::vector<Check> checks = {
      {"1. gate kernels match the eigendecomposition oracle",
       [] { return check_kernel_oracle(); }},
      {"2. analytic gradients match finite differences", [] { return check_gradients(); }},
      {"3. shift rules validated with recorded verdicts", [] { return check_shift_rules(); }},
      {"4. exhaustive-search size formula", [] { return check_combinatorics(); }},
      {"5. Toffoli-3 desk-scale compilation", [] { return check_toffoli_compilation(); }},
      {"6. cached kernel speedup over the oracle", [] { return check_speedup(); }},
      {"7. projective-simulation update algebra", [] { return check_ps_algebra(); }},
      {"8. curriculum geometric descent", [] { return check_curriculum(); }},
      {"9. benchmark target properties", [] { return check_targets(); }},
      {"10. end-to-end compile determinism",
       [&cli] { return check_cli_determinism(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = checks[i].run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.details.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s: %s  [%.1fs]\n", r.passed ? "PASS" : "FAIL", checks[i].name, secs);
    for (const std::string& d : r.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu checks failed\n", failures,
                only == 0 ? checks.size() : 1);
    return 1;
  }
  std::printf("all checks passed\n");
  return 0;
}

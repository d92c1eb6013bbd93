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

#include "ionforge/environment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ionforge/seeding.hpp"

namespace ionforge::env {

namespace {

void validate_config(const EnvConfig& cfg) {
  if (cfg.n_qubits < 1) {
    throw std::invalid_argument("EnvConfig: n_qubits must be >= 1");
  }
  if (cfg.l_max < 1) {
    throw std::invalid_argument("EnvConfig: l_max must be >= 1");
  }
  if (!(cfg.eps_min > 0.0 && cfg.eps_min < 1.0)) {
    throw std::invalid_argument("EnvConfig: eps_min must be in (0, 1)");
  }
  const auto d = static_cast<Eigen::Index>(1) << cfg.n_qubits;
  if (cfg.target.rows() != d || cfg.target.cols() != d) {
    throw std::invalid_argument("EnvConfig: target dimension mismatch");
  }
}

}  // namespace

CurriculumState update_curriculum(CurriculumState cs, const EnvConfig& cfg) {
  cs.eps_t = cfg.eps_min + 0.5 * (cs.eps_t - cfg.eps_min);
  cs.eps_t = std::clamp(cs.eps_t, cfg.eps_min, 1.0);
  cs.crossings_since_update = 0;
  return cs;
}

Environment::Environment(EnvConfig cfg, const gatekit::GateTables& tables)
    : cfg_(std::move(cfg)), tables_(tables) {
  validate_config(cfg_);
  if (tables_.n_qubits() != cfg_.n_qubits) {
    throw std::invalid_argument("Environment: tables built for wrong size");
  }
  layer_period_ =
      cfg_.layer_period > 0 ? cfg_.layer_period : cfg_.n_qubits + 2;
  circuit_ = {cfg_.n_qubits, {}};
  empty_cost_ =
      circuit::fidelity_cost(circuit_, ParamVector(0), cfg_.target, tables_);
}

int Environment::n_actions() const {
  return cfg_.variant == Variant::FreePlacement ? cfg_.n_qubits + 2
                                                : cfg_.n_qubits + 1;
}

circuit::GateKind Environment::action_gate(int action) const {
  if (action < 0 || action >= n_actions()) {
    throw std::out_of_range("Environment: action index out of range");
  }
  if (cfg_.variant == Variant::FreePlacement) {
    if (action == 0) return circuit::GateKind::ms();
    if (action == 1) return circuit::GateKind::cxy();
    return circuit::GateKind::z(action - 1);
  }
  if (action == 0) return circuit::GateKind::cxy();
  return circuit::GateKind::z(action);
}

std::vector<circuit::GateKind> Environment::layer_restricted_actions() const {
  if (cfg_.variant != Variant::LayerRestricted) {
    throw std::logic_error(
        "layer_restricted_actions: environment is free-placement");
  }
  std::vector<circuit::GateKind> out;
  out.reserve(static_cast<std::size_t>(n_actions()));
  for (int a = 0; a < n_actions(); ++a) out.push_back(action_gate(a));
  return out;
}

agent::Percept Environment::reset() {
  if (curriculum_.crossings_since_update >= cfg_.curriculum_window) {
    curriculum_ = update_curriculum(curriculum_, cfg_);
  }
  circuit_.gates.clear();
  percept_.clear();
  steps_ = 0;
  rotations_ = 0;
  ++episode_;
  active_ = true;
  return percept_;
}

StepResult Environment::step(int action) {
  if (!active_) {
    throw std::logic_error("Environment::step: no active episode");
  }
  const circuit::GateKind gate = action_gate(action);

  ++steps_;
  percept_.push_back(action);
  circuit_ = circuit::append_gate(std::move(circuit_), gate);
  if (cfg_.variant == Variant::LayerRestricted) {
    ++rotations_;
    if (rotations_ % layer_period_ == 0) {
      circuit_ = circuit::append_gate(std::move(circuit_),
                                      circuit::GateKind::ms());
    }
  }

  optimizer::OptConfig oc = cfg_.opt;
  oc.seed = seeding::mix_seed(cfg_.seed, static_cast<std::uint64_t>(episode_),
                              static_cast<std::uint64_t>(steps_));
  const auto cost_grad = [this](const ParamVector& p, ParamVector& g) {
    circuit::GradResult r =
        circuit::grape_gradient(circuit_, p, cfg_.target, tables_);
    g = std::move(r.grad);
    return r.cost;
  };
  StepResult out;
  out.info =
      optimizer::restart_minimize(cost_grad, circuit::param_count(circuit_), oc);

  const double cost = out.info.best_cost;
  const bool crossed = cost <= curriculum_.eps_t;
  out.reward = cost <= cfg_.eps_min ? cfg_.reward_full
               : crossed           ? cfg_.reward_mid
                                   : 0.0;
  if (crossed) ++curriculum_.crossings_since_update;
  out.done = crossed || steps_ >= cfg_.l_max;
  if (out.done) active_ = false;
  out.percept = percept_;
  return out;
}

namespace {

struct Candidate {
  int length = 0;
  double cost = 0.0;
};

// Shortest first, then cheapest; earlier discovery wins ties by never
// replacing an equal candidate.
bool better(const Candidate& a, const Candidate& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.cost < b.cost;
}

}  // namespace

TrainResult run_training(Environment& env, agent::Ecm& ecm,
                         const TrainOptions& opts) {
  using clock = std::chrono::steady_clock;
  const EnvConfig& cfg = env.config();
  if (ecm.config().n_actions != env.n_actions()) {
    throw std::invalid_argument("run_training: agent/environment action-set "
                                "size mismatch");
  }
  std::mt19937_64 agent_rng(opts.agent_seed);

  TrainResult out;
  out.best_circuit = {cfg.n_qubits, {}};
  out.best_params = ParamVector(0);
  out.best_cost = env.empty_circuit_cost();
  out.reached_eps_min = out.best_cost <= cfg.eps_min;
  Candidate best{0, out.best_cost};
  bool have_solution = out.reached_eps_min;

  for (int e = 0; e < cfg.e_max; ++e) {
    const double beta = agent::beta_at(ecm.config(), e);
    agent::Percept percept = env.reset();
    EpisodeLog log;
    log.episode = e;
    bool done = false;
    bool crossed = false;
    while (!done) {
      const int action = ecm.sample(percept, beta, agent_rng);
      ecm.mark(percept, action);
      const auto t0 = clock::now();
      StepResult sr = env.step(action);
      const auto t1 = clock::now();
      ecm.update(sr.reward);

      StepRecord rec;
      rec.step = env.steps_taken();
      rec.action = action;
      rec.circuit_len = static_cast<int>(env.current_circuit().gates.size());
      rec.best_cost = sr.info.best_cost;
      rec.reward = sr.reward;
      rec.eps_t = env.curriculum().eps_t;
      rec.elapsed_ms =
          opts.timing == TimingMode::Wall
              ? std::chrono::duration<double, std::milli>(t1 - t0).count()
              : 0.0;
      log.steps.push_back(rec);

      const Candidate cand{rec.circuit_len, sr.info.best_cost};
      const bool solves = sr.info.best_cost <= cfg.eps_min;
      const bool replace =
          solves ? (!have_solution || better(cand, best))
                 : (!have_solution && cand.cost < best.cost);
      if (replace) {
        best = cand;
        have_solution = have_solution || solves;
        out.best_circuit = env.current_circuit();
        out.best_params = sr.info.best_params;
        out.best_cost = sr.info.best_cost;
        out.reached_eps_min = solves;
        out.best_episode = e;
      }

      crossed = sr.info.best_cost <= rec.eps_t;
      done = sr.done;
      percept = std::move(sr.percept);
    }
    log.terminal = true;
    log.reason = crossed ? "threshold" : "step-limit";
    out.logs.push_back(std::move(log));
  }
  return out;
}

EnsembleResult run_ensemble(const EnvConfig& cfg, const agent::PsConfig& ps,
                            int n_agents, std::uint64_t base_seed, int workers,
                            TimingMode timing) {
  if (n_agents < 1) {
    throw std::invalid_argument("run_ensemble: n_agents must be >= 1");
  }
  EnsembleResult out;
  out.agents.resize(static_cast<std::size_t>(n_agents));
  const gatekit::GateTables tables(cfg.n_qubits);

  const auto run_one = [&](int i) {
    EnvConfig local = cfg;
    local.seed = seeding::mix_seed(base_seed, static_cast<std::uint64_t>(i), 1);
    Environment environment(local, tables);
    agent::PsConfig agent_cfg = ps;
    agent_cfg.n_actions = environment.n_actions();
    agent_cfg.total_episodes = cfg.e_max;
    agent::Ecm ecm(agent_cfg);
    TrainOptions opts;
    opts.agent_seed =
        seeding::mix_seed(base_seed, static_cast<std::uint64_t>(i), 2);
    opts.timing = timing;
    out.agents[static_cast<std::size_t>(i)] =
        run_training(environment, ecm, opts);
  };

  const int pool = std::max(1, std::min(workers, n_agents));
  if (pool == 1) {
    for (int i = 0; i < n_agents; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) {
      threads.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n_agents; i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (auto& th : threads) th.join();
  }

  for (int i = 0; i < n_agents; ++i) {
    const TrainResult& r = out.agents[static_cast<std::size_t>(i)];
    if (out.best_agent < 0) {
      out.best_agent = i;
      continue;
    }
    const TrainResult& b = out.agents[static_cast<std::size_t>(out.best_agent)];
    const bool r_solved = r.reached_eps_min;
    const bool b_solved = b.reached_eps_min;
    if (r_solved != b_solved) {
      if (r_solved) out.best_agent = i;
      continue;
    }
    const int rl = static_cast<int>(r.best_circuit.gates.size());
    const int bl = static_cast<int>(b.best_circuit.gates.size());
    if (r_solved) {
      if (rl < bl || (rl == bl && r.best_cost < b.best_cost)) out.best_agent = i;
    } else if (r.best_cost < b.best_cost) {
      out.best_agent = i;
    }
  }
  return out;
}

}  // namespace ionforge::env

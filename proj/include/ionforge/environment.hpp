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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ionforge/agent.hpp"
#include "ionforge/circuit.hpp"
#include "ionforge/gatekit.hpp"
#include "ionforge/linalg.hpp"
#include "ionforge/optimizer.hpp"

namespace ionforge::env {

// Free placement lets the agent choose every gate. Layer-restricted removes
// MS from the action set and auto-inserts one MS after each group of
// layer_period agent-placed rotations.
enum class Variant { FreePlacement, LayerRestricted };

struct EnvConfig {
  int n_qubits = 2;
  ComplexMatrix target;
  int l_max = 10;        // steps per episode (merged placements still count)
  int e_max = 100;       // episodes per agent
  double eps_min = 1e-2;
  int curriculum_window = 500;
  double reward_mid = 2.0;
  double reward_full = 10.0;
  Variant variant = Variant::FreePlacement;
  int layer_period = 0;  // rotations per auto-MS layer; 0 means n_qubits + 2
  optimizer::OptConfig opt;
  std::uint64_t seed = 0;  // root of the per-step optimizer seed stream
};

struct CurriculumState {
  double eps_t = 1.0;
  int crossings_since_update = 0;
};

// Halves the distance from eps_t to eps_min and resets the crossing counter.
// Caller checks crossings_since_update >= curriculum_window first.
CurriculumState update_curriculum(CurriculumState cs, const EnvConfig& cfg);

struct StepRecord {
  int step = 0;  // 1-based within the episode
  int action = 0;
  int circuit_len = 0;
  double best_cost = 0.0;
  double reward = 0.0;
  double eps_t = 0.0;
  double elapsed_ms = 0.0;
};

struct EpisodeLog {
  int episode = 0;
  std::vector<StepRecord> steps;
  bool terminal = false;
  std::string reason;  // "threshold" or "step-limit"
};

struct StepResult {
  agent::Percept percept;
  double reward = 0.0;
  bool done = false;
  optimizer::OptResult info;
};

// One compilation episode driver. Action ids are 0-based and ordered MS,
// CXY, Z1..Zn under free placement; CXY, Z1..Zn under layer restriction.
class Environment {
 public:
  // The tables must outlive the environment and match cfg.n_qubits.
  Environment(EnvConfig cfg, const gatekit::GateTables& tables);

  const EnvConfig& config() const { return cfg_; }
  int n_actions() const;
  circuit::GateKind action_gate(int action) const;
  // The non-MS gate kinds, in action order. Throws under free placement.
  std::vector<circuit::GateKind> layer_restricted_actions() const;

  // Starts the next episode (empty circuit, empty percept). Applies the
  // curriculum update first when enough crossings have accumulated.
  agent::Percept reset();

  // Appends the gate for `action`, re-optimizes all angles from fresh random
  // starts, and scores the result: reward_full at cost <= eps_min,
  // reward_mid at cost <= eps_t, else 0. The episode ends on a threshold
  // crossing or after l_max steps.
  StepResult step(int action);

  const circuit::Circuit& current_circuit() const { return circuit_; }
  const CurriculumState& curriculum() const { return curriculum_; }
  // Overrides the curriculum state (resume-from-checkpoint and tests).
  void set_curriculum(CurriculumState cs) { curriculum_ = cs; }
  int episode() const { return episode_; }
  int steps_taken() const { return steps_; }
  bool episode_active() const { return active_; }
  double empty_circuit_cost() const { return empty_cost_; }

 private:
  EnvConfig cfg_;
  const gatekit::GateTables& tables_;
  int layer_period_ = 0;
  double empty_cost_ = 0.0;

  circuit::Circuit circuit_;
  agent::Percept percept_;
  CurriculumState curriculum_;
  int episode_ = -1;
  int steps_ = 0;
  int rotations_ = 0;  // agent placements since episode start (layer variant)
  bool active_ = false;
};

enum class TimingMode { None, Wall };

struct TrainOptions {
  std::uint64_t agent_seed = 1;
  // None writes elapsed_ms = 0 so repeated runs are byte-identical; Wall
  // records real per-step optimizer time.
  TimingMode timing = TimingMode::None;
};

struct TrainResult {
  circuit::Circuit best_circuit;
  ParamVector best_params;
  double best_cost = 1.0;
  bool reached_eps_min = false;
  int best_episode = -1;  // -1 when the pre-training empty circuit is best
  std::vector<EpisodeLog> logs;
};

// Runs e_max episodes of the sample/mark/step/update loop. Returns the
// shortest circuit that reached eps_min (ties: lower cost, then earlier
// discovery); when none did, the lowest-cost circuit seen with
// reached_eps_min = false. The empty circuit is scored once up front and
// competes as a length-0 candidate.
TrainResult run_training(Environment& env, agent::Ecm& ecm,
                         const TrainOptions& opts);

struct EnsembleResult {
  std::vector<TrainResult> agents;
  int best_agent = -1;
};

// Independent (environment, agent) pairs, seeds derived per agent index from
// base_seed, run across `workers` threads. Results are identical for a given
// (cfg, ps, n_agents, base_seed) regardless of worker count.
EnsembleResult run_ensemble(const EnvConfig& cfg, const agent::PsConfig& ps,
                            int n_agents, std::uint64_t base_seed, int workers,
                            TimingMode timing);

}  // namespace ionforge::env

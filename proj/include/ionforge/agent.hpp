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
#include <iosfwd>
#include <map>
#include <random>
#include <vector>

namespace ionforge::agent {

// A percept is the sequence of actions already taken in the episode, in
// order. The empty sequence is the episode root.
using Percept = std::vector<int>;

struct PsConfig {
  int n_actions = 0;
  double damping = 0.001;     // relaxation rate of h-values toward 1
  double glow_damping = 0.1;  // per-step decay of edge glow
  double beta_start = 1e-3;
  double beta_end = 1.0;
  int total_episodes = 1;
};

// Softmax inverse temperature: linear ramp from beta_start at episode 0 to
// beta_end at episode == total_episodes. Throws std::out_of_range outside
// [0, total_episodes]. Training loops run episodes 0..total_episodes-1, so
// the realized schedule stops one increment short of beta_end.
double beta_at(const PsConfig& cfg, int episode);

// Two-layer episodic memory: one clip per percept, one weighted edge per
// action. Rows materialize lazily on first visit with h = 1, glow = 0.
class Ecm {
 public:
  explicit Ecm(PsConfig cfg);

  const PsConfig& config() const { return cfg_; }

  // Softmax(beta * h) over the percept's edges, max-subtracted before
  // exponentiation. Unvisited percepts yield the uniform policy.
  std::vector<double> policy(const Percept& percept, double beta) const;

  // Draws from policy(). Does not materialize or mark anything.
  int sample(const Percept& percept, double beta, std::mt19937_64& rng) const;

  // Sets glow to 1 on the traversed edge, materializing the row if needed.
  void mark(const Percept& percept, int action);

  // End-of-step learning over every materialized edge:
  //   h += -damping * (h - 1) + glow * reward, then glow *= 1 - glow_damping.
  void update(double reward);

  double h_value(const Percept& percept, int action) const;
  double glow(const Percept& percept, int action) const;
  std::size_t n_percepts() const { return rows_.size(); }

  void save(std::ostream& out) const;
  static Ecm load(std::istream& in);

 private:
  struct Row {
    std::vector<double> h;
    std::vector<double> g;
  };

  const Row* find(const Percept& percept) const;
  Row& materialize(const Percept& percept);

  PsConfig cfg_;
  std::map<Percept, Row> rows_;
};

}  // namespace ionforge::agent

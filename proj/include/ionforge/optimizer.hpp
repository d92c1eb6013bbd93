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
#include <functional>
#include <random>

#include "ionforge/linalg.hpp"

namespace ionforge::optimizer {

// Evaluates cost and writes the gradient into the second argument.
using CostGradFn = std::function<double(const ParamVector&, ParamVector&)>;

struct OptConfig {
  int max_iterations = 100;
  int n_restarts = 10;
  double grad_tolerance = 1e-8;
  int memory_pairs = 10;
  std::uint64_t seed = 0;
};

struct OptResult {
  ParamVector best_params;
  double best_cost = 0.0;
  int iterations_used = 0;
  int restart_index = 0;
  bool converged = false;
};

// Angles are unbounded during optimization (the cost is periodic); results
// are reported wrapped to (-2pi, 2pi].
double wrap_angle(double x);

// Limited-memory quasi-Newton descent with a backtracking sufficient-decrease
// line search. Accepted-step costs are non-increasing. Throws on non-finite
// cost or gradient at an accepted point.
OptResult minimize(const CostGradFn& f, ParamVector x0, const OptConfig& cfg);

// cfg.n_restarts independent runs from angles drawn 2pi * N(0, I) using
// cfg.seed; best result wins, ties broken by lower restart index. Restarts
// that throw are skipped (their diagnostics are aggregated); if every restart
// fails the aggregate is rethrown.
OptResult restart_minimize(const CostGradFn& f, int m, const OptConfig& cfg);

ParamVector sample_initial_angles(int m, std::mt19937_64& rng);

}  // namespace ionforge::optimizer

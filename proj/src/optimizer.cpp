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

#include "ionforge/optimizer.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ionforge::optimizer {

namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kBacktrackFactor = 0.5;
constexpr int kMaxBacktracks = 50;
constexpr int kMaxExpansions = 30;
constexpr double kCurvatureFloor = 1e-10;

struct Pair {
  ParamVector s;
  ParamVector y;
  double rho;
};

bool finite(double v) { return std::isfinite(v); }

bool finite(const ParamVector& v) { return v.allFinite(); }

// Two-loop recursion; returns -H*g. Falls back to steepest descent on an
// empty history.
ParamVector search_direction(const std::deque<Pair>& history,
                             const ParamVector& g) {
  if (history.empty()) return -g;
  ParamVector q = g;
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    alpha[i] = history[i].rho * history[i].s.dot(q);
    q -= alpha[i] * history[i].y;
  }
  const Pair& last = history.back();
  const double gamma = last.s.dot(last.y) / last.y.squaredNorm();
  q *= gamma;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double beta = history[i].rho * history[i].y.dot(q);
    q += (alpha[i] - beta) * history[i].s;
  }
  return -q;
}

}  // namespace

double wrap_angle(double x) {
  constexpr double period = 4.0 * std::numbers::pi;
  double y = std::remainder(x, period);  // lands in [-2pi, 2pi]
  if (y <= -2.0 * std::numbers::pi) y += period;
  return y;
}

OptResult minimize(const CostGradFn& f, ParamVector x0, const OptConfig& cfg) {
  const Eigen::Index m = x0.size();
  ParamVector x = std::move(x0);
  ParamVector g(m);
  double fx = f(x, g);
  if (!finite(fx) || !finite(g)) {
    throw std::runtime_error("minimize: non-finite cost or gradient at start");
  }
  const double f_start = fx;

  OptResult res;
  res.converged =
      m == 0 || g.lpNorm<Eigen::Infinity>() <= cfg.grad_tolerance;

  std::deque<Pair> history;
  ParamVector x_new(m), g_new(m);
  int iter = 0;
  while (!res.converged && iter < cfg.max_iterations) {
    ParamVector dir = search_direction(history, g);
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      history.clear();
      dir = -g;
      slope = g.dot(dir);
      if (!(slope < 0.0)) break;  // gradient numerically zero
    }

    double t = 1.0;
    double f_trial = 0.0;
    bool accepted = false;
    bool unit_step = false;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      x_new = x + t * dir;
      f_trial = f(x_new, g_new);
      // A non-finite trial just means the step was too long; keep shrinking.
      if (finite(f_trial) && f_trial <= fx + kArmijoSlope * t * slope) {
        accepted = true;
        unit_step = k == 0;
        break;
      }
      t *= kBacktrackFactor;
    }
    if (!accepted) break;  // no decrease found along the direction

    // When the unit step already satisfies sufficient decrease the direction
    // may be badly underscaled (a known stagnation mode of curvature-starved
    // quasi-Newton histories). Expand the step while sufficient decrease
    // holds and the cost keeps strictly improving.
    if (unit_step) {
      ParamVector x_try(m), g_try(m);
      for (int e = 0; e < kMaxExpansions; ++e) {
        const double t_try = t / kBacktrackFactor;
        x_try = x + t_try * dir;
        const double f_try = f(x_try, g_try);
        if (!finite(f_try) || f_try >= f_trial ||
            f_try > fx + kArmijoSlope * t_try * slope) {
          break;
        }
        t = t_try;
        f_trial = f_try;
        x_new.swap(x_try);
        g_new.swap(g_try);
      }
    }
    if (!finite(g_new)) {
      throw std::runtime_error(
          "minimize: non-finite gradient at accepted point");
    }

    ParamVector s = x_new - x;
    ParamVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > kCurvatureFloor * s.norm() * y.norm()) {
      history.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (static_cast<int>(history.size()) >
          std::max(1, cfg.memory_pairs)) {
        history.pop_front();
      }
    }
    x.swap(x_new);
    g.swap(g_new);
    fx = f_trial;
    ++iter;
    res.converged = g.lpNorm<Eigen::Infinity>() <= cfg.grad_tolerance;
  }

  res.iterations_used = iter;

  // Report angles in the canonical (-2pi, 2pi] window; the cost is periodic
  // so this only sheds whole periods. Keep the raw iterate if rounding in
  // the wrapped re-evaluation would report a worse value.
  ParamVector wrapped(m);
  for (Eigen::Index i = 0; i < m; ++i) wrapped[i] = wrap_angle(x[i]);
  ParamVector g_scratch(m);
  const double f_wrapped = f(wrapped, g_scratch);
  if (finite(f_wrapped) && f_wrapped <= fx) {
    res.best_params = std::move(wrapped);
    res.best_cost = f_wrapped;
  } else {
    res.best_params = std::move(x);
    res.best_cost = fx;
  }
  if (res.best_cost > f_start) {
    throw std::logic_error("minimize: cost increased over the start point");
  }
  return res;
}

OptResult restart_minimize(const CostGradFn& f, int m, const OptConfig& cfg) {
  if (m < 0) throw std::invalid_argument("restart_minimize: negative arity");
  const int restarts = std::max(1, cfg.n_restarts);
  std::mt19937_64 rng(cfg.seed);
  std::vector<ParamVector> starts;
  starts.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    starts.push_back(sample_initial_angles(m, rng));
  }

  OptResult best;
  bool have_best = false;
  std::ostringstream failures;
  int failed = 0;
  for (int r = 0; r < restarts; ++r) {
    try {
      OptResult res = minimize(f, starts[static_cast<std::size_t>(r)], cfg);
      res.restart_index = r;
      if (!have_best || res.best_cost < best.best_cost) {
        best = std::move(res);
        have_best = true;
      }
    } catch (const std::exception& e) {
      ++failed;
      failures << "restart " << r << ": " << e.what() << "; ";
    }
  }
  if (!have_best) {
    throw std::runtime_error("restart_minimize: all " +
                             std::to_string(failed) +
                             " restarts failed: " + failures.str());
  }
  return best;
}

ParamVector sample_initial_angles(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ParamVector out(m);
  for (int i = 0; i < m; ++i) {
    out[i] = 2.0 * std::numbers::pi * normal(rng);
  }
  return out;
}

}  // namespace ionforge::optimizer

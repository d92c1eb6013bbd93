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

#include "ionforge/agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ionforge::agent {

namespace {

// 53 random bits into [0, 1); bit-reproducible, unlike the distribution
// adapters the standard leaves implementation-defined.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double beta_at(const PsConfig& cfg, int episode) {
  if (episode < 0 || episode > cfg.total_episodes) {
    throw std::out_of_range("beta_at: episode outside [0, total_episodes]");
  }
  if (cfg.total_episodes <= 0) return cfg.beta_end;
  const double t = static_cast<double>(episode) / cfg.total_episodes;
  return cfg.beta_start + t * (cfg.beta_end - cfg.beta_start);
}

Ecm::Ecm(PsConfig cfg) : cfg_(cfg) {
  if (cfg_.n_actions < 1) {
    throw std::invalid_argument("Ecm: n_actions must be >= 1");
  }
}

const Ecm::Row* Ecm::find(const Percept& percept) const {
  const auto it = rows_.find(percept);
  return it == rows_.end() ? nullptr : &it->second;
}

Ecm::Row& Ecm::materialize(const Percept& percept) {
  const auto it = rows_.find(percept);
  if (it != rows_.end()) return it->second;
  Row row;
  row.h.assign(static_cast<std::size_t>(cfg_.n_actions), 1.0);
  row.g.assign(static_cast<std::size_t>(cfg_.n_actions), 0.0);
  return rows_.emplace(percept, std::move(row)).first->second;
}

std::vector<double> Ecm::policy(const Percept& percept, double beta) const {
  const std::size_t n = static_cast<std::size_t>(cfg_.n_actions);
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  const Row* row = find(percept);
  if (row == nullptr) return p;
  const double h_max = *std::max_element(row->h.begin(), row->h.end());
  double z = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    p[a] = std::exp(beta * (row->h[a] - h_max));
    z += p[a];
  }
  for (double& v : p) v /= z;
  return p;
}

int Ecm::sample(const Percept& percept, double beta,
                std::mt19937_64& rng) const {
  const std::vector<double> p = policy(percept, beta);
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < p.size(); ++a) {
    acc += p[a];
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(p.size()) - 1;
}

void Ecm::mark(const Percept& percept, int action) {
  if (action < 0 || action >= cfg_.n_actions) {
    throw std::out_of_range("Ecm::mark: action out of range");
  }
  materialize(percept).g[static_cast<std::size_t>(action)] = 1.0;
}

void Ecm::update(double reward) {
  const double keep = 1.0 - cfg_.glow_damping;
  for (auto& [percept, row] : rows_) {
    for (std::size_t a = 0; a < row.h.size(); ++a) {
      row.h[a] += -cfg_.damping * (row.h[a] - 1.0) + row.g[a] * reward;
      row.g[a] *= keep;
    }
  }
}

double Ecm::h_value(const Percept& percept, int action) const {
  const Row* row = find(percept);
  return row == nullptr ? 1.0 : row->h[static_cast<std::size_t>(action)];
}

double Ecm::glow(const Percept& percept, int action) const {
  const Row* row = find(percept);
  return row == nullptr ? 0.0 : row->g[static_cast<std::size_t>(action)];
}

void Ecm::save(std::ostream& out) const {
  out << "# ionforge-ecm v1\n";
  out << "n_actions " << cfg_.n_actions << '\n';
  out << "damping " << g17(cfg_.damping) << " glow_damping "
      << g17(cfg_.glow_damping) << " beta_start " << g17(cfg_.beta_start)
      << " beta_end " << g17(cfg_.beta_end) << " total_episodes "
      << cfg_.total_episodes << '\n';
  out << "percepts " << rows_.size() << '\n';
  for (const auto& [percept, row] : rows_) {
    out << "p " << percept.size();
    for (int a : percept) out << ' ' << a;
    out << " h";
    for (double v : row.h) out << ' ' << g17(v);
    out << " g";
    for (double v : row.g) out << ' ' << g17(v);
    out << '\n';
  }
}

Ecm Ecm::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header != "# ionforge-ecm v1") {
    throw std::runtime_error("Ecm::load: missing \"# ionforge-ecm v1\" header");
  }
  PsConfig cfg;
  std::string key;
  in >> key >> cfg.n_actions;
  if (key != "n_actions") throw std::runtime_error("Ecm::load: bad n_actions");
  in >> key >> cfg.damping;
  in >> key >> cfg.glow_damping;
  in >> key >> cfg.beta_start;
  in >> key >> cfg.beta_end;
  in >> key >> cfg.total_episodes;
  std::size_t count = 0;
  in >> key >> count;
  if (!in || key != "percepts") {
    throw std::runtime_error("Ecm::load: bad percept count");
  }
  Ecm ecm(cfg);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t len = 0;
    in >> key >> len;
    if (!in || key != "p") throw std::runtime_error("Ecm::load: bad row");
    Percept percept(len);
    for (std::size_t j = 0; j < len; ++j) in >> percept[j];
    Row row;
    row.h.resize(static_cast<std::size_t>(cfg.n_actions));
    row.g.resize(static_cast<std::size_t>(cfg.n_actions));
    in >> key;
    if (key != "h") throw std::runtime_error("Ecm::load: bad row");
    for (double& v : row.h) in >> v;
    in >> key;
    if (key != "g") throw std::runtime_error("Ecm::load: bad row");
    for (double& v : row.g) in >> v;
    if (!in) throw std::runtime_error("Ecm::load: truncated row");
    ecm.rows_.emplace(std::move(percept), std::move(row));
  }
  return ecm;
}

}  // namespace ionforge::agent

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

#include "ionforge/reportio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ionforge::reportio {

namespace {

constexpr const char* kLogHeader = "# ionforge-log v1";
constexpr const char* kLogColumns =
    "agent,episode,step,action,circuit_len,best_cost,reward,eps_t,elapsed_ms";
constexpr const char* kCircuitHeader = "# ionforge-circuit v1";

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_episodes_csv(const std::string& path,
                        const env::EnsembleResult& r) {
  std::ofstream out = open_out(path);
  out << kLogHeader << '\n' << kLogColumns << '\n';
  for (std::size_t a = 0; a < r.agents.size(); ++a) {
    for (const env::EpisodeLog& log : r.agents[a].logs) {
      for (const env::StepRecord& s : log.steps) {
        out << a << ',' << log.episode << ',' << s.step << ',' << s.action
            << ',' << s.circuit_len << ',' << g17(s.best_cost) << ','
            << g17(s.reward) << ',' << g17(s.eps_t) << ','
            << g17(s.elapsed_ms) << '\n';
      }
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<CsvRow> read_episodes_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kLogHeader) {
    throw std::runtime_error(path + ": missing log version line");
  }
  if (!std::getline(in, line) || line != kLogColumns) {
    throw std::runtime_error(path + ": unexpected column header");
  }
  std::vector<CsvRow> rows;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    CsvRow row;
    char sep = ',';
    ls >> row.agent >> sep >> row.episode >> sep >> row.step >> sep >>
        row.action >> sep >> row.circuit_len >> sep >> row.best_cost >> sep >>
        row.reward >> sep >> row.eps_t >> sep >> row.elapsed_ms;
    if (!ls) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed row");
    }
    rows.push_back(row);
  }
  return rows;
}

void write_summary_json(const std::string& path, const config::RunConfig& cfg,
                        const env::EnsembleResult& r) {
  nlohmann::json j;
  j["format"] = "ionforge-summary v1";
  j["n_qubits"] = cfg.environment.n_qubits;
  j["agents"] = static_cast<int>(r.agents.size());
  j["seed"] = cfg.seed;
  j["eps_min"] = cfg.environment.eps_min;
  j["e_max"] = cfg.environment.e_max;
  j["l_max"] = cfg.environment.l_max;

  const auto agent_entry = [](int idx, const env::TrainResult& t) {
    nlohmann::json e;
    e["agent"] = idx;
    e["length"] = static_cast<int>(t.best_circuit.gates.size());
    e["cost"] = t.best_cost;
    e["reached_eps_min"] = t.reached_eps_min;
    e["episode"] = t.best_episode;
    e["circuit"] = circuit::to_line(t.best_circuit);
    return e;
  };

  if (r.best_agent >= 0) {
    const env::TrainResult& best =
        r.agents[static_cast<std::size_t>(r.best_agent)];
    nlohmann::json b = agent_entry(r.best_agent, best);
    b["params"] = std::vector<double>(
        best.best_params.data(),
        best.best_params.data() + best.best_params.size());
    j["best"] = std::move(b);
  }

  nlohmann::json per_agent = nlohmann::json::array();
  for (std::size_t a = 0; a < r.agents.size(); ++a) {
    per_agent.push_back(
        agent_entry(static_cast<int>(a), r.agents[a]));
  }
  j["per_agent"] = std::move(per_agent);

  if (!cfg.extra.empty()) j["config_extra"] = cfg.extra;

  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_circuit_file(const std::string& path, const circuit::Circuit& c,
                        const ParamVector& params, double cost) {
  if (params.size() != circuit::param_count(c)) {
    throw std::invalid_argument("write_circuit_file: params/circuit mismatch");
  }
  std::ofstream out = open_out(path);
  out << kCircuitHeader << '\n';
  out << "n " << c.n_qubits << '\n';
  out << "gates";
  const std::string line = circuit::to_line(c);
  if (!line.empty()) out << ' ' << line;
  out << '\n';
  out << "params";
  const std::string pline = circuit::format_params(params);
  if (!pline.empty()) out << ' ' << pline;
  out << '\n';
  out << "cost " << g17(cost) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

CircuitFile read_circuit_file(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kCircuitHeader) {
    throw std::runtime_error(path + ": missing circuit version line");
  }
  const auto expect = [&](const std::string& prefix) {
    if (!std::getline(in, line) ||
        line.compare(0, prefix.size(), prefix) != 0 ||
        (line.size() > prefix.size() && line[prefix.size()] != ' ')) {
      throw std::runtime_error(path + ": expected '" + prefix + "' line");
    }
    return line.size() > prefix.size() ? line.substr(prefix.size() + 1)
                                       : std::string();
  };
  const std::string n_str = expect("n");
  int n_qubits = 0;
  try {
    n_qubits = std::stoi(n_str);
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": bad qubit count '" + n_str + "'");
  }
  CircuitFile out;
  out.circuit = circuit::parse_line(n_qubits, expect("gates"));
  out.params = circuit::parse_params(expect("params"));
  const std::string cost_str = expect("cost");
  try {
    out.cost = std::stod(cost_str);
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": bad cost '" + cost_str + "'");
  }
  if (out.params.size() != circuit::param_count(out.circuit)) {
    throw std::runtime_error(path + ": params do not match circuit arity");
  }
  return out;
}

}  // namespace ionforge::reportio

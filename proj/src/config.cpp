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

#include "ionforge/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ionforge::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& name, std::size_t line,
                       const std::string& msg) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

struct Setter {
  const std::string& name;
  std::size_t line;
  const std::string& key;
  const std::string& value;

  [[noreturn]] void bad(const std::string& what) const {
    fail(name, line, "key '" + key + "': " + what + ": '" + value + "'");
  }

  void to(int& out) const {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(value, &used);
      if (used != value.size()) bad("expected an integer");
      out = static_cast<int>(v);
      if (out != v) bad("integer out of range");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      bad("expected an integer");
    }
  }

  void to(double& out) const {
    try {
      std::size_t used = 0;
      out = std::stod(value, &used);
      if (used != value.size()) bad("expected a number");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      bad("expected a number");
    }
  }

  void to(std::uint64_t& out) const {
    try {
      std::size_t used = 0;
      out = std::stoull(value, &used);
      if (used != value.size()) bad("expected an unsigned integer");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      bad("expected an unsigned integer");
    }
  }

  void to(std::string& out) const { out = value; }

  void to(targets::BigCount& out) const {
    try {
      out = targets::BigCount(value);
    } catch (const std::exception&) {
      bad("expected an integer");
    }
  }
};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(name, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(name, line_no, "empty section name");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(name, line_no, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, line_no, "empty key");
    if (section.empty()) fail(name, line_no, "key before any [section]");

    const Setter set{name, line_no, key, value};
    bool known = true;

    if (section == "target") {
      if (key == "kind") {
        if (value == "toffoli") {
          cfg.target.kind = targets::TargetKind::Toffoli;
        } else if (value == "ucc") {
          cfg.target.kind = targets::TargetKind::Ucc;
        } else if (value == "xxz") {
          cfg.target.kind = targets::TargetKind::Xxz;
        } else if (value == "matrixfile") {
          cfg.target.kind = targets::TargetKind::MatrixFile;
        } else {
          set.bad("expected toffoli|ucc|xxz|matrixfile");
        }
      } else if (key == "n") {
        set.to(cfg.target.n_qubits);
        cfg.environment.n_qubits = cfg.target.n_qubits;
      } else if (key == "beta_ucc") {
        set.to(cfg.target.beta_ucc);
      } else if (key == "h") {
        set.to(cfg.target.field_h);
      } else if (key == "J") {
        set.to(cfg.target.coupling_j);
      } else if (key == "delta") {
        set.to(cfg.target.anisotropy);
      } else if (key == "tau") {
        set.to(cfg.target.time_tau);
      } else if (key == "path") {
        set.to(cfg.target.path);
      } else {
        known = false;
      }
    } else if (section == "environment") {
      if (key == "l_max") {
        set.to(cfg.environment.l_max);
      } else if (key == "e_max") {
        set.to(cfg.environment.e_max);
      } else if (key == "eps_min") {
        set.to(cfg.environment.eps_min);
      } else if (key == "curriculum_window") {
        set.to(cfg.environment.curriculum_window);
      } else if (key == "reward_mid") {
        set.to(cfg.environment.reward_mid);
      } else if (key == "reward_full") {
        set.to(cfg.environment.reward_full);
      } else if (key == "variant") {
        if (value == "free") {
          cfg.environment.variant = env::Variant::FreePlacement;
        } else if (value == "layers") {
          cfg.environment.variant = env::Variant::LayerRestricted;
        } else {
          set.bad("expected free|layers");
        }
      } else if (key == "layer_period") {
        set.to(cfg.environment.layer_period);
      } else {
        known = false;
      }
    } else if (section == "agent") {
      if (key == "damping") {
        set.to(cfg.agent.damping);
      } else if (key == "glow_damping") {
        set.to(cfg.agent.glow_damping);
      } else if (key == "beta_start") {
        set.to(cfg.agent.beta_start);
      } else if (key == "beta_end") {
        set.to(cfg.agent.beta_end);
      } else {
        known = false;
      }
    } else if (section == "optimizer") {
      optimizer::OptConfig& opt = cfg.environment.opt;
      if (key == "max_iterations") {
        set.to(opt.max_iterations);
      } else if (key == "n_restarts") {
        set.to(opt.n_restarts);
      } else if (key == "grad_tolerance") {
        set.to(opt.grad_tolerance);
      } else if (key == "memory_pairs") {
        set.to(opt.memory_pairs);
      } else {
        known = false;
      }
    } else if (section == "run") {
      if (key == "agents") {
        set.to(cfg.agents);
      } else if (key == "seed") {
        set.to(cfg.seed);
      } else if (key == "workers") {
        set.to(cfg.workers);
      } else if (key == "out_dir") {
        set.to(cfg.out_dir);
      } else if (key == "timing") {
        if (value == "none") {
          cfg.timing = env::TimingMode::None;
        } else if (value == "wall") {
          cfg.timing = env::TimingMode::Wall;
        } else {
          set.bad("expected none|wall");
        }
      } else {
        known = false;
      }
    } else if (section == "layer_search") {
      if (key == "eps") {
        set.to(cfg.layer_search.eps);
      } else if (key == "l_ms_max") {
        set.to(cfg.layer_search.l_ms_max);
      } else if (key == "budget") {
        set.to(cfg.layer_search.budget);
      } else {
        known = false;
      }
    } else {
      known = false;
    }

    if (!known) cfg.extra[section + "." + key] = value;
  }

  if (cfg.agents < 1) fail(name, line_no, "run.agents must be >= 1");
  if (cfg.workers < 1) fail(name, line_no, "run.workers must be >= 1");
  cfg.layer_search.opt = cfg.environment.opt;
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace ionforge::config

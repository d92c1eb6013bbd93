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
#include <map>
#include <stdexcept>
#include <string>

#include "ionforge/agent.hpp"
#include "ionforge/environment.hpp"
#include "ionforge/targets.hpp"

namespace ionforge::config {

// Parse failures carry "file:line: message" diagnostics.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full experiment description. Unrecognized keys are not errors: they land
// in `extra` (as "section.key" -> value) and are echoed into the summary for
// provenance, so experiment files may carry fields this engine ignores.
struct RunConfig {
  targets::TargetSpec target;
  env::EnvConfig environment;  // .target matrix is filled by the caller
  agent::PsConfig agent;       // n_actions/total_episodes derived at run time
  targets::LayerSearchConfig layer_search;
  int agents = 5;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir;
  env::TimingMode timing = env::TimingMode::None;
  std::map<std::string, std::string> extra;
};

// INI-style text: [section] headers, key = value lines, '#' or ';' comments.
// Sections: [target], [environment], [agent], [optimizer], [run],
// [layer_search]. The optimizer section feeds both the environment's
// per-step optimizer and the layer search.
RunConfig parse_config_text(const std::string& text, const std::string& name);
RunConfig parse_config_file(const std::string& path);

}  // namespace ionforge::config

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

#include <string>
#include <vector>

#include "ionforge/circuit.hpp"
#include "ionforge/config.hpp"
#include "ionforge/environment.hpp"

namespace ionforge::reportio {

// Step-level training log. First line is the version stamp
// `# ionforge-log v1`, then a column header, then one row per step in
// (agent, episode, step) order. Doubles printed with %.17g so identical runs
// produce identical bytes.
void write_episodes_csv(const std::string& path, const env::EnsembleResult& r);

struct CsvRow {
  int agent = 0;
  int episode = 0;
  int step = 0;
  int action = 0;
  int circuit_len = 0;
  double best_cost = 0.0;
  double reward = 0.0;
  double eps_t = 0.0;
  double elapsed_ms = 0.0;
};

std::vector<CsvRow> read_episodes_csv(const std::string& path);

// Run-level JSON summary: best circuit overall, per-agent bests, and the
// config's unrecognized keys echoed for provenance.
void write_summary_json(const std::string& path, const config::RunConfig& cfg,
                        const env::EnsembleResult& r);

// One circuit with its angles and cost, in a line-oriented text form.
void write_circuit_file(const std::string& path, const circuit::Circuit& c,
                        const ParamVector& params, double cost);

struct CircuitFile {
  circuit::Circuit circuit;
  ParamVector params;
  double cost = 0.0;
};

CircuitFile read_circuit_file(const std::string& path);

}  // namespace ionforge::reportio

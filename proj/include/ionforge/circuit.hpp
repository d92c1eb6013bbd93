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

#include <random>
#include <string>
#include <vector>

#include "ionforge/gatekit.hpp"
#include "ionforge/linalg.hpp"

namespace ionforge::circuit {

enum class GateType { MS, CXY, Z };

// A gate slot in a sequence: the family plus, for Z, the 1-based target
// qubit. Angles live in a separate parameter vector (2 per MS/CXY, 1 per Z).
struct GateKind {
  GateType type = GateType::MS;
  int qubit = 0;  // 0 for the collective gates

  static GateKind ms() { return {GateType::MS, 0}; }
  static GateKind cxy() { return {GateType::CXY, 0}; }
  static GateKind z(int qubit) { return {GateType::Z, qubit}; }

  friend bool operator==(const GateKind&, const GateKind&) = default;
};

// Gate order is application order: gates[0] acts first on the state, so the
// composed matrix is V = V_{L-1} * ... * V_0.
struct Circuit {
  int n_qubits = 0;
  std::vector<GateKind> gates;
};

int param_arity(GateType type);
int param_count(const Circuit& c);
// Start offset of each gate's angles inside the flat parameter vector.
std::vector<int> param_offsets(const Circuit& c);

// Value-semantics append. Appending the gate kind already at the tail is a
// structural no-op (adjacent same-kind gates merge into one slot).
Circuit append_gate(Circuit c, GateKind g);

ComplexMatrix circuit_unitary(const Circuit& c, const ParamVector& params,
                              const gatekit::GateTables& tables);

// 1 - |tr(V U_target^dag)|^2 / d^2.
double fidelity_cost(const Circuit& c, const ParamVector& params,
                     const ComplexMatrix& target,
                     const gatekit::GateTables& tables);

struct GradResult {
  double cost = 0.0;
  ParamVector grad;
};

// Analytic cost gradient in one backward sweep over cached partial products
// (linear in circuit length; no finite differences). The cost field comes
// from the same forward product as fidelity_cost and matches it exactly.
GradResult grape_gradient(const Circuit& c, const ParamVector& params,
                          const ComplexMatrix& target,
                          const gatekit::GateTables& tables);

// Uniform draw over the n+2 gate kinds per slot, appended with the merging
// rule, so the realized length can be below `length`. Used by the gradient
// verification tools.
Circuit random_circuit(int n_qubits, int length, std::mt19937_64& rng);

// One-line text form in application order, e.g. "MS CXY Z1 Z3". Empty
// circuit serializes to an empty string.
std::string to_line(const Circuit& c);
Circuit parse_line(int n_qubits, const std::string& line);

std::string format_params(const ParamVector& params);
ParamVector parse_params(const std::string& line);

}  // namespace ionforge::circuit

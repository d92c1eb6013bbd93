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
#include <string>
#include <vector>

#include "ionforge/circuit.hpp"

namespace ionforge::shiftrules {

// Gradient estimators that touch the cost function only through black-box
// evaluations at shifted angles, the way a lab experiment would. Each rule is
// validated against the analytic gradient; rules that fail validation are
// replaced by a central-finite-difference fallback on the same black-box
// interface.

// Cost as a function of a single angle, all other angles held fixed.
using CostAt = std::function<double(double)>;

// Alias for the Hilbert-Schmidt-test cost; identical to fidelity_cost (the
// two cost expressions coincide for unitary targets).
double hst_cost(const circuit::Circuit& c, const ParamVector& params,
                const ComplexMatrix& target, const gatekit::GateTables& tables);

struct ShiftTerm {
  double offset;
  double coeff;
};

struct ShiftRule {
  std::string name;
  std::vector<ShiftTerm> terms;
};

// Exact two-point rule for Z rotations: +-1/2 at shifts +-pi/2. With the
// half-angle generator convention the cost is a degree-1 trigonometric
// polynomial in theta, for which this is an identity, not an approximation.
ShiftRule z_theta_rule();

// Literal published coefficient sets for the collective gates. These carry
// known defects (see validate_rules); they are shipped verbatim and gated by
// empirical validation rather than silently corrected.
ShiftRule cxy_theta_rule(int n_qubits);
// Terms whose printed coefficient divides by sin(k*pi) = 0 are masked.
ShiftRule ms_theta_rule(int n_qubits);
ShiftRule phi_rule();

// sum_i coeff_i * cost(x0 + offset_i).
double apply_rule(const ShiftRule& rule, const CostAt& cost, double x0);

double central_difference(const CostAt& cost, double x0, double step = 1e-6);

double shift_grad_z(const CostAt& cost, double theta);
double shift_grad_theta_cxy(const CostAt& cost, double theta, int n_qubits);
double shift_grad_theta_ms(const CostAt& cost, double theta, int n_qubits);
double shift_grad_phi(const CostAt& cost, double phi);

struct RuleReport {
  std::string rule;
  double max_abs_error = 0.0;
  double tolerance = 1e-6;
  bool passed = false;
  int slots_checked = 0;
};

struct ValidationReport {
  std::vector<RuleReport> rules;
  // Central-difference fallback accuracy against the analytic gradient over
  // the same parameter slots.
  double fallback_max_error = 0.0;
};

// Runs every rule family against the analytic gradient on seeded random
// circuits of the given register size and records pass/fail per family.
// The Z rule is held to 1e-8; the others to 1e-6.
ValidationReport validate_rules(int n_qubits, int n_circuits, int max_len,
                                std::uint64_t seed);

const RuleReport* find_rule(const ValidationReport& report,
                            const std::string& name);

// Full-circuit gradient through the black-box path: each parameter slot uses
// its family's rule when that rule validated, else central differences.
ParamVector rule_gradient(const circuit::Circuit& c, const ParamVector& params,
                          const ComplexMatrix& target,
                          const gatekit::GateTables& tables,
                          const ValidationReport& report);

}  // namespace ionforge::shiftrules

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

#include "ionforge/shiftrules.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ionforge::shiftrules {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZTol = 1e-8;
constexpr double kRuleTol = 1e-6;

}  // namespace

double hst_cost(const circuit::Circuit& c, const ParamVector& params,
                const ComplexMatrix& target,
                const gatekit::GateTables& tables) {
  return circuit::fidelity_cost(c, params, target, tables);
}

ShiftRule z_theta_rule() {
  return {"z-theta", {{kPi / 2.0, 0.5}, {-kPi / 2.0, -0.5}}};
}

ShiftRule cxy_theta_rule(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("cxy_theta_rule: n_qubits must be >= 1");
  }
  ShiftRule rule{"cxy-theta", {}};
  const int terms = 2 * n_qubits;
  for (int l = 1; l <= terms; ++l) {
    const double x = (2.0 * l - 1.0) * kPi / (2.0 * n_qubits);
    const double sign = (l % 2 == 1) ? 1.0 : -1.0;
    rule.terms.push_back({x, sign / (2.0 * std::sin(x))});
  }
  return rule;
}

ShiftRule ms_theta_rule(int n_qubits) {
  if (n_qubits < 2) {
    throw std::invalid_argument("ms_theta_rule: n_qubits must be >= 2");
  }
  ShiftRule rule{"ms-theta", {}};
  const int terms = 2 * ((n_qubits + 1) / 2);
  const double denom = static_cast<double>(n_qubits / 2 + 1);
  for (int l = 1; l <= terms; ++l) {
    const double x = (2.0 * l - 1.0) * kPi / denom;
    const double s = std::sin(x);
    // The printed coefficient is singular whenever the denominator divides
    // 2l-1 (first at n = 4); those terms are dropped.
    if (std::abs(s) < 1e-12) continue;
    const double sign = (l % 2 == 1) ? 1.0 : -1.0;
    rule.terms.push_back({x, sign / (2.0 * s)});
  }
  return rule;
}

ShiftRule phi_rule() {
  const double r = 1.0 / std::sqrt(2.0);
  return {"phi",
          {{kPi / 4.0, 1.0},
           {-kPi / 4.0, -1.0},
           {-kPi / 2.0, r - 0.5},
           {kPi / 2.0, r + 0.5}}};
}

double apply_rule(const ShiftRule& rule, const CostAt& cost, double x0) {
  double acc = 0.0;
  for (const auto& t : rule.terms) {
    acc += t.coeff * cost(x0 + t.offset);
  }
  return acc;
}

double central_difference(const CostAt& cost, double x0, double step) {
  return (cost(x0 + step) - cost(x0 - step)) / (2.0 * step);
}

double shift_grad_z(const CostAt& cost, double theta) {
  return apply_rule(z_theta_rule(), cost, theta);
}

double shift_grad_theta_cxy(const CostAt& cost, double theta, int n_qubits) {
  return apply_rule(cxy_theta_rule(n_qubits), cost, theta);
}

double shift_grad_theta_ms(const CostAt& cost, double theta, int n_qubits) {
  return apply_rule(ms_theta_rule(n_qubits), cost, theta);
}

double shift_grad_phi(const CostAt& cost, double phi) {
  return apply_rule(phi_rule(), cost, phi);
}

ValidationReport validate_rules(int n_qubits, int n_circuits, int max_len,
                                std::uint64_t seed) {
  const gatekit::GateTables tables(n_qubits);
  const ShiftRule z = z_theta_rule();
  const ShiftRule cxy = cxy_theta_rule(n_qubits);
  const ShiftRule phi = phi_rule();
  ShiftRule ms;
  const bool have_ms = n_qubits >= 2;
  if (have_ms) ms = ms_theta_rule(n_qubits);

  RuleReport rep_z{"z-theta", 0.0, kZTol, false, 0};
  RuleReport rep_cxy{"cxy-theta", 0.0, kRuleTol, false, 0};
  RuleReport rep_ms{"ms-theta", 0.0, kRuleTol, false, 0};
  RuleReport rep_phi{"phi", 0.0, kRuleTol, false, 0};
  double fallback_err = 0.0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(1, std::max(1, max_len));
  std::normal_distribution<double> angle(0.0, 1.0);

  // The target of each probe is itself a random circuit of the same size, so
  // the cost landscape is generic (nonzero value, nonzero gradient).
  for (int trial = 0; trial < n_circuits; ++trial) {
    const circuit::Circuit probe =
        circuit::random_circuit(n_qubits, len_dist(rng), rng);
    const circuit::Circuit target_c =
        circuit::random_circuit(n_qubits, len_dist(rng), rng);
    ParamVector target_params(circuit::param_count(target_c));
    for (Eigen::Index i = 0; i < target_params.size(); ++i) {
      target_params[i] = 2.0 * kPi * angle(rng);
    }
    const ComplexMatrix target =
        circuit::circuit_unitary(target_c, target_params, tables);

    ParamVector params(circuit::param_count(probe));
    for (Eigen::Index i = 0; i < params.size(); ++i) {
      params[i] = 2.0 * kPi * angle(rng);
    }
    const circuit::GradResult analytic =
        circuit::grape_gradient(probe, params, target, tables);

    const auto offsets = circuit::param_offsets(probe);
    for (std::size_t gi = 0; gi < probe.gates.size(); ++gi) {
      const auto type = probe.gates[gi].type;
      const int arity = circuit::param_arity(type);
      for (int s = 0; s < arity; ++s) {
        const int slot = offsets[gi] + s;
        const CostAt cost = [&, slot](double v) {
          ParamVector p = params;
          p[slot] = v;
          return hst_cost(probe, p, target, tables);
        };
        const double truth = analytic.grad[slot];
        const double fd = central_difference(cost, params[slot]);
        fallback_err = std::max(fallback_err, std::abs(fd - truth));

        RuleReport* rep = nullptr;
        const ShiftRule* rule = nullptr;
        if (type == circuit::GateType::Z) {
          rep = &rep_z;
          rule = &z;
        } else if (s == 1) {
          rep = &rep_phi;
          rule = &phi;
        } else if (type == circuit::GateType::CXY) {
          rep = &rep_cxy;
          rule = &cxy;
        } else if (have_ms) {
          rep = &rep_ms;
          rule = &ms;
        } else {
          continue;
        }
        const double est = apply_rule(*rule, cost, params[slot]);
        rep->max_abs_error = std::max(rep->max_abs_error, std::abs(est - truth));
        ++rep->slots_checked;
      }
    }
  }

  for (RuleReport* rep : {&rep_z, &rep_cxy, &rep_ms, &rep_phi}) {
    rep->passed = rep->slots_checked > 0 && rep->max_abs_error <= rep->tolerance;
  }
  return {{rep_z, rep_cxy, rep_ms, rep_phi}, fallback_err};
}

const RuleReport* find_rule(const ValidationReport& report,
                            const std::string& name) {
  for (const auto& r : report.rules) {
    if (r.rule == name) return &r;
  }
  return nullptr;
}

ParamVector rule_gradient(const circuit::Circuit& c, const ParamVector& params,
                          const ComplexMatrix& target,
                          const gatekit::GateTables& tables,
                          const ValidationReport& report) {
  const int n = c.n_qubits;
  const ShiftRule z = z_theta_rule();
  const ShiftRule cxy = cxy_theta_rule(n);
  const ShiftRule phi = phi_rule();
  ShiftRule ms;
  if (n >= 2) ms = ms_theta_rule(n);

  auto family_passed = [&report](const char* name) {
    const RuleReport* r = find_rule(report, name);
    return r != nullptr && r->passed;
  };
  const bool use_z = family_passed("z-theta");
  const bool use_cxy = family_passed("cxy-theta");
  const bool use_ms = n >= 2 && family_passed("ms-theta");
  const bool use_phi = family_passed("phi");

  ParamVector grad(circuit::param_count(c));
  const auto offsets = circuit::param_offsets(c);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto type = c.gates[gi].type;
    const int arity = circuit::param_arity(type);
    for (int s = 0; s < arity; ++s) {
      const int slot = offsets[gi] + s;
      const CostAt cost = [&, slot](double v) {
        ParamVector p = params;
        p[slot] = v;
        return hst_cost(c, p, target, tables);
      };
      const ShiftRule* rule = nullptr;
      if (type == circuit::GateType::Z) {
        if (use_z) rule = &z;
      } else if (s == 1) {
        if (use_phi) rule = &phi;
      } else if (type == circuit::GateType::CXY) {
        if (use_cxy) rule = &cxy;
      } else {
        if (use_ms) rule = &ms;
      }
      grad[slot] = rule != nullptr ? apply_rule(*rule, cost, params[slot])
                                   : central_difference(cost, params[slot]);
    }
  }
  return grad;
}

}  // namespace ionforge::shiftrules

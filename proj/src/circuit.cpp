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

#include "ionforge/circuit.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ionforge::circuit {

namespace {

void require_compatible(const Circuit& c, const ParamVector& params,
                        const gatekit::GateTables& tables) {
  if (c.n_qubits != tables.n_qubits()) {
    std::ostringstream msg;
    msg << "circuit register size " << c.n_qubits
        << " does not match tables for n = " << tables.n_qubits();
    throw std::invalid_argument(msg.str());
  }
  const int expected = param_count(c);
  if (params.size() != expected) {
    std::ostringstream msg;
    msg << "parameter vector has " << params.size() << " entries, circuit needs "
        << expected;
    throw std::invalid_argument(msg.str());
  }
}

void require_target(const ComplexMatrix& target,
                    const gatekit::GateTables& tables) {
  if (target.rows() != tables.dim() || target.cols() != tables.dim()) {
    std::ostringstream msg;
    msg << "target is " << target.rows() << "x" << target.cols()
        << ", expected " << tables.dim() << "x" << tables.dim();
    throw std::invalid_argument(msg.str());
  }
}

// tr(X Y) without forming the product.
Complex trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x.cwiseProduct(y.transpose()).sum();
}

gatekit::GateGrad gate_with_grads(const GateKind& g, const double* angles,
                                  const gatekit::GateTables& tables) {
  switch (g.type) {
    case GateType::MS:
      return gatekit::ms_grad(tables, {angles[0], angles[1]});
    case GateType::CXY:
      return gatekit::cxy_grad(tables, {angles[0], angles[1]});
    case GateType::Z: {
      gatekit::GateGrad out;
      out.unitary = gatekit::z_unitary(tables.n_qubits(), g.qubit, angles[0]);
      out.d_theta = gatekit::z_grad(tables.n_qubits(), g.qubit, angles[0]);
      return out;
    }
  }
  throw std::logic_error("unreachable gate type");
}

}  // namespace

int param_arity(GateType type) { return type == GateType::Z ? 1 : 2; }

int param_count(const Circuit& c) {
  int total = 0;
  for (const auto& g : c.gates) total += param_arity(g.type);
  return total;
}

std::vector<int> param_offsets(const Circuit& c) {
  std::vector<int> offsets;
  offsets.reserve(c.gates.size());
  int at = 0;
  for (const auto& g : c.gates) {
    offsets.push_back(at);
    at += param_arity(g.type);
  }
  return offsets;
}

Circuit append_gate(Circuit c, GateKind g) {
  if (g.type == GateType::Z) {
    if (g.qubit < 1 || g.qubit > c.n_qubits) {
      std::ostringstream msg;
      msg << "append_gate: Z qubit " << g.qubit << " out of range [1, "
          << c.n_qubits << "]";
      throw std::invalid_argument(msg.str());
    }
  } else if (g.qubit != 0) {
    throw std::invalid_argument("append_gate: collective gate carries no qubit index");
  }
  if (!c.gates.empty() && c.gates.back() == g) {
    return c;  // adjacent same-kind gates merge
  }
  c.gates.push_back(g);
  return c;
}

ComplexMatrix circuit_unitary(const Circuit& c, const ParamVector& params,
                              const gatekit::GateTables& tables) {
  require_compatible(c, params, tables);
  ComplexMatrix u = linalg::identity(tables.dim());
  int at = 0;
  for (const auto& g : c.gates) {
    ComplexMatrix v;
    switch (g.type) {
      case GateType::MS:
        v = gatekit::ms_unitary(tables, {params[at], params[at + 1]});
        break;
      case GateType::CXY:
        v = gatekit::cxy_unitary(tables, {params[at], params[at + 1]});
        break;
      case GateType::Z:
        v = gatekit::z_unitary(tables.n_qubits(), g.qubit, params[at]);
        break;
    }
    at += param_arity(g.type);
    u = v * u;
  }
  return u;
}

double fidelity_cost(const Circuit& c, const ParamVector& params,
                     const ComplexMatrix& target,
                     const gatekit::GateTables& tables) {
  require_target(target, tables);
  const ComplexMatrix v = circuit_unitary(c, params, tables);
  return 1.0 - linalg::gate_fidelity(target, v);
}

GradResult grape_gradient(const Circuit& c, const ParamVector& params,
                          const ComplexMatrix& target,
                          const gatekit::GateTables& tables) {
  require_compatible(c, params, tables);
  require_target(target, tables);

  const std::size_t len = c.gates.size();
  const double d = static_cast<double>(tables.dim());
  const auto offsets = param_offsets(c);

  GradResult out;
  out.grad = ParamVector::Zero(param_count(c));

  // Forward pass: per-gate unitaries with their analytic derivatives, plus
  // prefix products. prefix[i] = V_i ... V_0, so prefix.back() is the full
  // circuit, built in the same order as circuit_unitary.
  std::vector<gatekit::GateGrad> gates(len);
  std::vector<ComplexMatrix> prefix(len);
  for (std::size_t i = 0; i < len; ++i) {
    gates[i] = gate_with_grads(c.gates[i], params.data() + offsets[i], tables);
    prefix[i] = (i == 0) ? gates[i].unitary : ComplexMatrix(gates[i].unitary * prefix[i - 1]);
  }
  const ComplexMatrix v_total =
      len == 0 ? linalg::identity(tables.dim()) : prefix.back();

  const Complex overlap = linalg::trace_overlap(v_total, target);
  out.cost = 1.0 - std::norm(overlap) / (d * d);
  if (len == 0) return out;

  // Backward sweep. With suffix B_i = V_{L-1} ... V_{i+1}, the derivative of
  // the overlap trace with respect to a parameter of gate i is
  // tr(dV_i * prefix[i-1] * U^dag * B_i); carry K = U^dag * B_i down the
  // sweep so each gate costs two small products.
  const Complex scale = Complex(-2.0 / (d * d), 0.0) * std::conj(overlap);
  ComplexMatrix k = target.adjoint();
  for (std::size_t i = len; i-- > 0;) {
    const ComplexMatrix e = (i == 0) ? k : ComplexMatrix(prefix[i - 1] * k);
    const int off = offsets[i];
    out.grad[off] = (scale * trace_product(gates[i].d_theta, e)).real();
    if (param_arity(c.gates[i].type) == 2) {
      out.grad[off + 1] = (scale * trace_product(gates[i].d_phi, e)).real();
    }
    if (i > 0) k = ComplexMatrix(k * gates[i].unitary);
  }
  return out;
}

Circuit random_circuit(int n_qubits, int length, std::mt19937_64& rng) {
  Circuit c{n_qubits, {}};
  std::uniform_int_distribution<int> kind(0, n_qubits + 1);
  for (int i = 0; i < length; ++i) {
    const int k = kind(rng);
    GateKind g = k == 0             ? GateKind::ms()
                 : k == 1           ? GateKind::cxy()
                                    : GateKind::z(k - 1);
    c = append_gate(std::move(c), g);
  }
  return c;
}

std::string to_line(const Circuit& c) {
  std::string line;
  for (const auto& g : c.gates) {
    if (!line.empty()) line += ' ';
    switch (g.type) {
      case GateType::MS:
        line += "MS";
        break;
      case GateType::CXY:
        line += "CXY";
        break;
      case GateType::Z:
        line += 'Z' + std::to_string(g.qubit);
        break;
    }
  }
  return line;
}

Circuit parse_line(int n_qubits, const std::string& line) {
  Circuit c;
  c.n_qubits = n_qubits;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    GateKind g;
    if (token == "MS") {
      g = GateKind::ms();
    } else if (token == "CXY") {
      g = GateKind::cxy();
    } else if (token.size() > 1 && token[0] == 'Z') {
      int qubit = 0;
      try {
        std::size_t used = 0;
        qubit = std::stoi(token.substr(1), &used);
        if (used != token.size() - 1) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_line: bad gate token '" + token + "'");
      }
      if (qubit < 1 || qubit > n_qubits) {
        throw std::invalid_argument("parse_line: Z qubit out of range in '" +
                                    token + "'");
      }
      g = GateKind::z(qubit);
    } else {
      throw std::invalid_argument("parse_line: bad gate token '" + token + "'");
    }
    // Direct push: parsing reproduces the stored sequence verbatim, merged
    // or not.
    c.gates.push_back(g);
  }
  return c;
}

std::string format_params(const ParamVector& params) {
  std::string line;
  char buf[64];
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", params[i]);
    if (!line.empty()) line += ' ';
    line += buf;
  }
  return line;
}

ParamVector parse_params(const std::string& line) {
  std::istringstream in(line);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    throw std::invalid_argument("parse_params: non-numeric token in '" + line +
                                "'");
  }
  ParamVector out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = values[i];
  }
  return out;
}

}  // namespace ionforge::circuit

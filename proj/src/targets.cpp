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

#include "ionforge/targets.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ionforge/gatekit.hpp"
#include "ionforge/seeding.hpp"

namespace ionforge::targets {

namespace {

Eigen::Index dim_of(int n_qubits) {
  return static_cast<Eigen::Index>(1) << n_qubits;
}

}  // namespace

ComplexMatrix toffoli(int n_qubits) {
  if (n_qubits < 3) {
    throw std::invalid_argument("toffoli: needs at least 3 qubits");
  }
  const Eigen::Index d = dim_of(n_qubits);
  ComplexMatrix u = linalg::identity(d);
  // Qubits 1..3 are the top three bits of the basis index.
  const Eigen::Index block = d >> 3;
  for (Eigen::Index r = 0; r < block; ++r) {
    const Eigen::Index i0 = 6 * block + r;
    const Eigen::Index i1 = 7 * block + r;
    u(i0, i0) = 0.0;
    u(i1, i1) = 0.0;
    u(i0, i1) = 1.0;
    u(i1, i0) = 1.0;
  }
  return u;
}

ComplexMatrix ucc_unitary(int n_qubits, double beta_ucc) {
  if (n_qubits < 2) {
    throw std::invalid_argument("ucc_unitary: needs at least 2 qubits");
  }
  const Eigen::Index d = dim_of(n_qubits);
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  const double amp = std::pow(2.0, n_qubits);
  g(d - 1, 0) = amp;
  g(0, d - 1) = amp;
  // exp(+i beta G); the exponentiator computes exp(-i scale H).
  return linalg::expm_hermitian_generator(linalg::HermitianMatrix(std::move(g)),
                                          -beta_ucc);
}

ComplexMatrix xxz_unitary(int n_qubits, double field_h, double coupling_j,
                          double anisotropy, double time_tau) {
  if (n_qubits < 2) {
    throw std::invalid_argument("xxz_unitary: needs at least 2 qubits");
  }
  const Eigen::Index d = dim_of(n_qubits);
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int j = 1; j <= n_qubits; ++j) {
    h -= 2.0 * field_h * linalg::embed_at(linalg::sigma_z(), n_qubits, j);
  }
  const ComplexMatrix quarter = 0.25 * linalg::identity(d);
  for (int j = 1; j < n_qubits; ++j) {
    const ComplexMatrix xx =
        linalg::embed_at(linalg::sigma_x(), n_qubits, j) *
        linalg::embed_at(linalg::sigma_x(), n_qubits, j + 1);
    const ComplexMatrix yy =
        linalg::embed_at(linalg::sigma_y(), n_qubits, j) *
        linalg::embed_at(linalg::sigma_y(), n_qubits, j + 1);
    const ComplexMatrix zz =
        linalg::embed_at(linalg::sigma_z(), n_qubits, j) *
        linalg::embed_at(linalg::sigma_z(), n_qubits, j + 1);
    h -= coupling_j * (xx + yy + anisotropy * (zz - quarter));
  }
  return linalg::expm_hermitian_generator(linalg::HermitianMatrix(std::move(h)),
                                          time_tau);
}

ComplexMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_matrix_file: cannot open " + path);
  }
  std::vector<Complex> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      const auto comma = tok.find(',');
      if (comma == std::string::npos) {
        throw std::runtime_error("load_matrix_file: " + path + ":" +
                                 std::to_string(line_no) +
                                 ": token is not a re,im pair: " + tok);
      }
      std::size_t used_re = 0;
      std::size_t used_im = 0;
      double re = 0.0;
      double im = 0.0;
      const std::string re_s = tok.substr(0, comma);
      const std::string im_s = tok.substr(comma + 1);
      try {
        re = std::stod(re_s, &used_re);
        im = std::stod(im_s, &used_im);
      } catch (const std::exception&) {
        used_re = std::string::npos;
      }
      if (used_re != re_s.size() || used_im != im_s.size()) {
        throw std::runtime_error("load_matrix_file: " + path + ":" +
                                 std::to_string(line_no) +
                                 ": malformed complex entry: " + tok);
      }
      entries.emplace_back(re, im);
    }
  }
  const auto count = entries.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(count))));
  if (d < 2 || static_cast<std::size_t>(d) * static_cast<std::size_t>(d) !=
                   count) {
    throw std::runtime_error("load_matrix_file: " + path + ": entry count " +
                             std::to_string(count) + " is not a square");
  }
  if ((d & (d - 1)) != 0) {
    throw std::runtime_error("load_matrix_file: " + path + ": dimension " +
                             std::to_string(d) + " is not a power of two");
  }
  ComplexMatrix u(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      u(i, j) = entries[static_cast<std::size_t>(i * d + j)];
    }
  }
  if (!linalg::is_unitary(u, linalg::kUnitaryTol)) {
    throw std::runtime_error("load_matrix_file: " + path +
                             ": matrix is not unitary (tol 1e-10)");
  }
  return u;
}

void save_matrix_file(const std::string& path, const ComplexMatrix& u) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_matrix_file: cannot open " + path);
  }
  char buf[80];
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", u(i, j).real(),
                    u(i, j).imag());
      out << buf << (j + 1 == u.cols() ? "" : " ");
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("save_matrix_file: write failed for " + path);
  }
}

ComplexMatrix build_target(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetKind::Toffoli:
      return toffoli(spec.n_qubits);
    case TargetKind::Ucc:
      return ucc_unitary(spec.n_qubits, spec.beta_ucc);
    case TargetKind::Xxz:
      return xxz_unitary(spec.n_qubits, spec.field_h, spec.coupling_j,
                         spec.anisotropy, spec.time_tau);
    case TargetKind::MatrixFile: {
      ComplexMatrix u = load_matrix_file(spec.path);
      if (spec.n_qubits > 0 && u.rows() != dim_of(spec.n_qubits)) {
        throw std::runtime_error(
            "build_target: matrix file dimension does not match n_qubits");
      }
      return u;
    }
  }
  throw std::logic_error("build_target: unknown target kind");
}

int rotation_block_gate_count(int n_qubits) { return n_qubits + 2; }

int rotation_block_param_count(int n_qubits) { return n_qubits + 4; }

circuit::Circuit layer_circuit(int n_qubits, int n_layers) {
  if (n_qubits < 1 || n_layers < 0) {
    throw std::invalid_argument("layer_circuit: bad sizes");
  }
  circuit::Circuit c{n_qubits, {}};
  const auto push_block = [&c, n_qubits] {
    c.gates.push_back(circuit::GateKind::cxy());
    for (int q = 1; q <= n_qubits; ++q) {
      c.gates.push_back(circuit::GateKind::z(q));
    }
    c.gates.push_back(circuit::GateKind::cxy());
  };
  push_block();
  for (int l = 0; l < n_layers; ++l) {
    c.gates.push_back(circuit::GateKind::ms());
    push_block();
  }
  return c;
}

std::vector<int> rotation_gate_positions(const circuit::Circuit& c) {
  std::vector<int> out;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (c.gates[i].type != circuit::GateType::MS) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

BigCount combinations_count(int n_qubits, int l_ms) {
  if (n_qubits < 1 || l_ms < 1) {
    throw std::invalid_argument("combinations_count: needs n >= 1, l_ms >= 1");
  }
  const unsigned m = static_cast<unsigned>(n_qubits) + 2;
  const unsigned k = m * (static_cast<unsigned>(l_ms) + 1);
  const BigCount num = ((BigCount(1) << k) - 1) << (2 * m);
  const BigCount den = (BigCount(1) << (2 * m)) - 1;
  // Nearest integer of num/den, then the quadratic correction term.
  const BigCount rounded = (2 * num + den) / (2 * den);
  return rounded - BigCount(l_ms) * l_ms;
}

namespace {

// Advances `idx` to the next k-subset of {0..m-1} in lexicographic order;
// false once exhausted.
bool next_subset(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < m - (k - i)) {
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        idx[static_cast<std::size_t>(j)] =
            idx[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

LayerSearchResult layer_search(const ComplexMatrix& target, int n_qubits,
                               const LayerSearchConfig& cfg) {
  if (cfg.l_ms_max < 1) {
    throw std::invalid_argument("layer_search: l_ms_max must be >= 1");
  }
  const BigCount estimate = combinations_count(n_qubits, cfg.l_ms_max);
  if (estimate > cfg.budget) {
    std::ostringstream msg;
    msg << "layer_search: enumeration estimate " << estimate
        << " exceeds budget " << cfg.budget;
    throw std::runtime_error(msg.str());
  }
  const gatekit::GateTables tables(n_qubits);
  if (target.rows() != tables.dim() || target.cols() != tables.dim()) {
    throw std::invalid_argument("layer_search: target dimension mismatch");
  }

  LayerSearchResult result;
  for (int layers = 1; layers <= cfg.l_ms_max; ++layers) {
    const circuit::Circuit c = layer_circuit(n_qubits, layers);
    const std::vector<int> rot_pos = rotation_gate_positions(c);
    const int m_rot = static_cast<int>(rot_pos.size());
    const auto offsets = circuit::param_offsets(c);
    const int n_full = circuit::param_count(c);
    std::uint64_t combo_in_layer = 0;

    for (int r = 0; r <= m_rot; ++r) {
      std::vector<int> subset(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = i;
      bool more = true;
      while (more) {
        std::vector<char> active_rot(static_cast<std::size_t>(m_rot), 0);
        for (int i : subset) active_rot[static_cast<std::size_t>(i)] = 1;

        std::vector<int> active;
        int rot_ordinal = 0;
        for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
          const int base = offsets[gi];
          const int arity = circuit::param_arity(c.gates[gi].type);
          const bool on =
              c.gates[gi].type == circuit::GateType::MS ||
              active_rot[static_cast<std::size_t>(rot_ordinal)] != 0;
          if (c.gates[gi].type != circuit::GateType::MS) ++rot_ordinal;
          if (on) {
            for (int s = 0; s < arity; ++s) active.push_back(base + s);
          }
        }

        const auto cost_grad = [&](const ParamVector& p, ParamVector& g) {
          ParamVector full = ParamVector::Zero(n_full);
          for (std::size_t i = 0; i < active.size(); ++i) {
            full[active[i]] = p[static_cast<Eigen::Index>(i)];
          }
          circuit::GradResult res =
              circuit::grape_gradient(c, full, target, tables);
          g.resize(static_cast<Eigen::Index>(active.size()));
          for (std::size_t i = 0; i < active.size(); ++i) {
            g[static_cast<Eigen::Index>(i)] = res.grad[active[i]];
          }
          return res.cost;
        };

        optimizer::OptConfig oc = cfg.opt;
        oc.seed = seeding::mix_seed(cfg.opt.seed,
                                    static_cast<std::uint64_t>(layers),
                                    combo_in_layer);
        const optimizer::OptResult opt = optimizer::restart_minimize(
            cost_grad, static_cast<int>(active.size()), oc);
        ++combo_in_layer;
        ++result.combinations_tried;

        if (opt.best_cost <= cfg.eps) {
          result.found = true;
          result.circuit = c;
          result.params = ParamVector::Zero(n_full);
          for (std::size_t i = 0; i < active.size(); ++i) {
            result.params[active[i]] =
                opt.best_params[static_cast<Eigen::Index>(i)];
          }
          result.cost = opt.best_cost;
          result.n_layers = layers;
          return result;
        }
        if (opt.best_cost < result.cost) result.cost = opt.best_cost;
        more = next_subset(subset, m_rot);
      }
    }
  }
  return result;
}

}  // namespace ionforge::targets

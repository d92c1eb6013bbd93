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

#include "ionforge/gatekit.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace ionforge::gatekit {

namespace {

constexpr int kMaxQubits = 12;

// Unnormalized projector entries depend only on the Hamming distance h
// between the two basis indices: with S = (I + i sigma_y)^{x n} (entries
// +-1), the weight-k column group gives
//   D_k(i, j) = sum_{|l| = k} (-1)^{|i & ~l|} (-1)^{|j & ~l|}
//             = [x^k] (1 + x)^{n - h} (x - 1)^h,   h = popcount(i ^ j),
// by factoring the sum qubit by qubit. Coefficients fit comfortably in
// int64 for n <= 12.
std::vector<std::vector<std::int64_t>> hamming_kernel_table(int n) {
  std::vector<std::vector<std::int64_t>> table(
      static_cast<std::size_t>(n) + 1,
      std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
  for (int h = 0; h <= n; ++h) {
    // poly = (1 + x)^(n-h) * (x - 1)^h, degree n.
    std::vector<std::int64_t> poly{1};
    for (int r = 0; r < n - h; ++r) {
      std::vector<std::int64_t> next(poly.size() + 1, 0);
      for (std::size_t c = 0; c < poly.size(); ++c) {
        next[c] += poly[c];
        next[c + 1] += poly[c];
      }
      poly = std::move(next);
    }
    for (int r = 0; r < h; ++r) {
      std::vector<std::int64_t> next(poly.size() + 1, 0);
      for (std::size_t c = 0; c < poly.size(); ++c) {
        next[c] -= poly[c];
        next[c + 1] += poly[c];
      }
      poly = std::move(next);
    }
    for (int k = 0; k <= n; ++k) {
      table[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)] =
          poly[static_cast<std::size_t>(k)];
    }
  }
  return table;
}

std::vector<Complex> phi_phase_table(int n, double phi) {
  std::vector<Complex> table(2 * static_cast<std::size_t>(n) + 1);
  for (int m = -n; m <= n; ++m) {
    table[static_cast<std::size_t>(m + n)] = std::exp(Complex(0.0, phi * m));
  }
  return table;
}

// out = sum_k coeffs[k] * P[k], accumulated in double precision. The cached
// projectors are bitwise symmetric (outer-product sums of real sign columns),
// so only the lower triangle is streamed and the upper half is mirrored; the
// memory traffic of the dominant pass halves and the result stays
// bit-identical to a whole-matrix sweep.
ComplexMatrix projector_sum(const std::vector<ProjectorMatrix>& projs,
                            const std::vector<Complex>& coeffs,
                            Eigen::Index d) {
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  Complex* o = out.data();
  const std::size_t dim = static_cast<std::size_t>(d);
  constexpr std::size_t kRowBlock = 16;  // output rows held hot across projectors
  for (std::size_t r0 = 0; r0 < dim; r0 += kRowBlock) {
    const std::size_t r1 = std::min(r0 + kRowBlock, dim);
    for (std::size_t k = 0; k < projs.size(); ++k) {
      const float* p = projs[k].data();
      const double cr = coeffs[k].real();
      const double ci = coeffs[k].imag();
      for (std::size_t i = r0; i < r1; ++i) {
        const float* prow = p + i * dim;
        Complex* orow = o + i * dim;
        for (std::size_t j = 0; j <= i; ++j) {
          const double v = static_cast<double>(prow[j]);
          orow[j] += Complex(cr * v, ci * v);
        }
      }
    }
  }
  constexpr std::size_t kTile = 32;  // transpose copy in cache-sized tiles
  for (std::size_t bi = 0; bi < dim; bi += kTile) {
    for (std::size_t bj = 0; bj <= bi; bj += kTile) {
      const std::size_t imax = std::min(bi + kTile, dim);
      for (std::size_t i = bi; i < imax; ++i) {
        const std::size_t jmax = std::min({bj + kTile, dim, i});
        for (std::size_t j = bj; j < jmax; ++j) o[j * dim + i] = o[i * dim + j];
      }
    }
  }
  return out;
}

void apply_phase(const GateTables& t, double phi, ComplexMatrix& m) {
  const auto table = phi_phase_table(t.n_qubits(), phi);
  const std::int8_t* ce = t.phase_exponents().data();
  Complex* o = m.data();
  const std::size_t count =
      static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols());
  const int n = t.n_qubits();
  for (std::size_t idx = 0; idx < count; ++idx) {
    o[idx] *= table[static_cast<std::size_t>(ce[idx] + n)];
  }
}

std::vector<Complex> xy_phase_coeffs(const GateTables& t, double theta,
                                     bool derivative) {
  const auto& lambda = t.xy_eigenvalues();
  std::vector<Complex> coeffs(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    Complex c = std::exp(Complex(0.0, -lambda[k] * theta / 2.0));
    if (derivative) c *= Complex(0.0, -lambda[k] / 2.0);
    coeffs[k] = c;
  }
  return coeffs;
}

std::vector<Complex> ms_phase_coeffs(const GateTables& t, double theta,
                                     bool derivative) {
  const auto& mu = t.ms_eigenvalues();
  std::vector<Complex> coeffs(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    Complex c = std::exp(Complex(0.0, -mu[k] * theta / 4.0));
    if (derivative) c *= Complex(0.0, -mu[k] / 4.0);
    coeffs[k] = c;
  }
  return coeffs;
}

// Shared by cxy_grad / ms_grad: given the projector sums for the gate (A)
// and its theta derivative (At), apply phases and build d/dphi = iC .* U.
GateGrad assemble_grad(const GateTables& t, double phi, ComplexMatrix a,
                       ComplexMatrix at) {
  const auto table = phi_phase_table(t.n_qubits(), phi);
  const std::int8_t* ce = t.phase_exponents().data();
  const int n = t.n_qubits();
  const std::size_t count = static_cast<std::size_t>(t.dim()) *
                            static_cast<std::size_t>(t.dim());
  GateGrad g;
  g.d_phi.resize(t.dim(), t.dim());
  Complex* pa = a.data();
  Complex* pt = at.data();
  Complex* pp = g.d_phi.data();
  for (std::size_t idx = 0; idx < count; ++idx) {
    const int c = ce[idx];
    const Complex ph = table[static_cast<std::size_t>(c + n)];
    pa[idx] *= ph;
    pt[idx] *= ph;
    pp[idx] = Complex(0.0, static_cast<double>(c)) * pa[idx];
  }
  g.unitary = std::move(a);
  g.d_theta = std::move(at);
  return g;
}

void require_qubit(int n_qubits, int qubit) {
  if (qubit < 1 || qubit > n_qubits) {
    std::ostringstream msg;
    msg << "z gate: qubit " << qubit << " out of range [1, " << n_qubits << "]";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

GateTables::GateTables(int n_qubits) : n_(n_qubits) {
  if (n_ < 1 || n_ > kMaxQubits) {
    std::ostringstream msg;
    msg << "GateTables: n_qubits " << n_ << " out of supported range [1, "
        << kMaxQubits << "]";
    throw std::invalid_argument(msg.str());
  }
  dim_ = Eigen::Index(1) << n_;
  const auto d = static_cast<std::size_t>(dim_);

  hamming_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    hamming_[i] = std::popcount(static_cast<unsigned>(i));
  }

  xy_eigenvalues_.resize(static_cast<std::size_t>(n_) + 1);
  for (int k = 0; k <= n_; ++k) {
    xy_eigenvalues_[static_cast<std::size_t>(k)] = 2.0 * k - n_;
  }
  const int pairs = n_ / 2;
  ms_eigenvalues_.resize(static_cast<std::size_t>(pairs) + 1);
  for (int k = 0; k <= pairs; ++k) {
    const double lam = 2.0 * k - n_;
    ms_eigenvalues_[static_cast<std::size_t>(k)] = lam * lam;
  }

  const auto kernel = hamming_kernel_table(n_);
  const float norm = 1.0f / static_cast<float>(dim_);

  // Per-entry values are looked up by the Hamming distance of the index
  // pair; the 1/2^n normalization is folded in here, once.
  xy_projectors_.reserve(static_cast<std::size_t>(n_) + 1);
  for (int k = 0; k <= n_; ++k) {
    ProjectorMatrix p(dim_, dim_);
    float* out = p.data();
    const auto& row = kernel[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < d; ++i) {
      const unsigned ii = static_cast<unsigned>(i);
      for (std::size_t j = 0; j < d; ++j) {
        out[i * d + j] =
            static_cast<float>(row[static_cast<std::size_t>(
                std::popcount(ii ^ static_cast<unsigned>(j)))]) *
            norm;
      }
    }
    xy_projectors_.push_back(std::move(p));
  }

  ms_projectors_.reserve(static_cast<std::size_t>(pairs) + 1);
  for (int k = 0; k <= pairs; ++k) {
    const int partner = n_ - k;
    if (partner == k) {
      // Self-paired middle term for even n enters once, not twice.
      ms_projectors_.push_back(xy_projectors_[static_cast<std::size_t>(k)]);
    } else {
      ms_projectors_.push_back(xy_projectors_[static_cast<std::size_t>(k)] +
                               xy_projectors_[static_cast<std::size_t>(partner)]);
    }
  }

  phase_exponents_.resize(dim_, dim_);
  std::int8_t* ce = phase_exponents_.data();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ce[i * d + j] = static_cast<std::int8_t>(hamming_[i] - hamming_[j]);
    }
  }
}

ComplexMatrix cxy_unitary(const GateTables& t, GateParams p) {
  ComplexMatrix u = projector_sum(t.xy_projectors(),
                                  xy_phase_coeffs(t, p.theta, false), t.dim());
  apply_phase(t, p.phi, u);
  return u;
}

ComplexMatrix ms_unitary(const GateTables& t, GateParams p) {
  ComplexMatrix u = projector_sum(t.ms_projectors(),
                                  ms_phase_coeffs(t, p.theta, false), t.dim());
  apply_phase(t, p.phi, u);
  return u;
}

GateGrad cxy_grad(const GateTables& t, GateParams p) {
  ComplexMatrix a = projector_sum(t.xy_projectors(),
                                  xy_phase_coeffs(t, p.theta, false), t.dim());
  ComplexMatrix at = projector_sum(t.xy_projectors(),
                                   xy_phase_coeffs(t, p.theta, true), t.dim());
  return assemble_grad(t, p.phi, std::move(a), std::move(at));
}

GateGrad ms_grad(const GateTables& t, GateParams p) {
  ComplexMatrix a = projector_sum(t.ms_projectors(),
                                  ms_phase_coeffs(t, p.theta, false), t.dim());
  ComplexMatrix at = projector_sum(t.ms_projectors(),
                                   ms_phase_coeffs(t, p.theta, true), t.dim());
  return assemble_grad(t, p.phi, std::move(a), std::move(at));
}

ComplexMatrix z_unitary(int n_qubits, int qubit, double theta) {
  require_qubit(n_qubits, qubit);
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  const int shift = n_qubits - qubit;
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  const Complex lower = std::exp(Complex(0.0, -theta / 2.0));
  const Complex upper = std::exp(Complex(0.0, theta / 2.0));
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool set = ((i >> shift) & 1) != 0;
    u(i, i) = set ? upper : lower;
  }
  return u;
}

ComplexMatrix z_grad(int n_qubits, int qubit, double theta) {
  require_qubit(n_qubits, qubit);
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  const int shift = n_qubits - qubit;
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  const Complex lower =
      Complex(0.0, -0.5) * std::exp(Complex(0.0, -theta / 2.0));
  const Complex upper = Complex(0.0, 0.5) * std::exp(Complex(0.0, theta / 2.0));
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool set = ((i >> shift) & 1) != 0;
    g(i, i) = set ? upper : lower;
  }
  return g;
}

ComplexMatrix collective_x(int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int q = 1; q <= n_qubits; ++q) {
    s += linalg::embed_at(linalg::sigma_x(), n_qubits, q);
  }
  return s;
}

ComplexMatrix collective_y(int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int q = 1; q <= n_qubits; ++q) {
    s += linalg::embed_at(linalg::sigma_y(), n_qubits, q);
  }
  return s;
}

ComplexMatrix collective_z(int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int q = 1; q <= n_qubits; ++q) {
    s += linalg::embed_at(linalg::sigma_z(), n_qubits, q);
  }
  return s;
}

ComplexMatrix xy_generator(int n_qubits, double phi) {
  return std::cos(phi) * collective_x(n_qubits) +
         std::sin(phi) * collective_y(n_qubits);
}

ComplexMatrix cxy_unitary_oracle(int n_qubits, GateParams p) {
  const linalg::HermitianMatrix gen(xy_generator(n_qubits, p.phi));
  return linalg::expm_hermitian_generator(gen, p.theta / 2.0);
}

ComplexMatrix ms_unitary_oracle(int n_qubits, GateParams p) {
  const ComplexMatrix s = xy_generator(n_qubits, p.phi);
  const linalg::HermitianMatrix gen(ComplexMatrix(s * s));
  return linalg::expm_hermitian_generator(gen, p.theta / 4.0);
}

ComplexMatrix z_unitary_oracle(int n_qubits, int qubit, double theta) {
  const linalg::HermitianMatrix gen(
      linalg::embed_at(linalg::sigma_z(), n_qubits, qubit));
  return linalg::expm_hermitian_generator(gen, theta / 2.0);
}

}  // namespace ionforge::gatekit

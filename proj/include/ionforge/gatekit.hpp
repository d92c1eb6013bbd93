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
#include <vector>

#include "ionforge/linalg.hpp"

namespace ionforge::gatekit {

// Collective-rotation gates on an n-qubit register. All three families are
// diagonalized once per register size and then evaluated for any angles as a
// cached projector sum times a phase matrix, with no per-call
// eigendecomposition and no matrix products.
//
//   CXY(theta, phi) = exp(-i (theta/2) H_xy(phi)),  H_xy = Sx cos phi + Sy sin phi
//   MS(theta, phi)  = exp(-i (theta/4) H_xy(phi)^2)
//   Z_j(theta)      = exp(-i (theta/2) sigma_z^(j))
//
// where Sx, Sy sum the single-qubit Paulis over the register.

struct GateParams {
  double theta = 0.0;
  double phi = 0.0;
};

// Eigen matrices with float scalars; projector entries are dyadic rationals
// k / 2^n with |k| <= binom(12, 6), exact in single precision up to the
// supported register size. Accumulation happens in double.
using ProjectorMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using PhaseExponentMatrix =
    Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Immutable per-register-size cache of the shared eigenstructure.
//
// H_xy(phi) is diagonalized by phase-decorated columns of S_n = (I + i
// sigma_y)^{x n}: eigenvalue 2k - n belongs to the Hamming-weight-k column
// group, and the phi dependence factors out of the eigenvectors entirely, as
// the entrywise phase exp(i phi (b_i - b_j)) with b the Hamming-weight
// vector. MS shares the eigenvectors with eigenvalues squared.
class GateTables {
 public:
  // 1 <= n_qubits <= 12 (dense tables; n = 12 takes ~1.3 GB).
  explicit GateTables(int n_qubits);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return dim_; }

  const std::vector<int>& hamming() const { return hamming_; }

  // lambda_k = 2k - n, k = 0..n.
  const std::vector<double>& xy_eigenvalues() const { return xy_eigenvalues_; }
  // Distinct values of (2k - n)^2, k = 0..floor(n/2); floor(n/2)+1 entries.
  const std::vector<double>& ms_eigenvalues() const { return ms_eigenvalues_; }

  // Normalized spectral projectors (1/2^n folded in at build): sum_k
  // xy_projector(k) = I and projectors are mutually orthogonal. The MS list
  // pairs weight k with weight n-k (middle term halved for even n).
  const std::vector<ProjectorMatrix>& xy_projectors() const {
    return xy_projectors_;
  }
  const std::vector<ProjectorMatrix>& ms_projectors() const {
    return ms_projectors_;
  }

  // C_ij = b_i - b_j in [-n, n]; exp(i phi C) is the per-call phase matrix,
  // built from a table of the 2n+1 distinct values.
  const PhaseExponentMatrix& phase_exponents() const { return phase_exponents_; }

 private:
  int n_;
  Eigen::Index dim_;
  std::vector<int> hamming_;
  std::vector<double> xy_eigenvalues_;
  std::vector<double> ms_eigenvalues_;
  std::vector<ProjectorMatrix> xy_projectors_;
  std::vector<ProjectorMatrix> ms_projectors_;
  PhaseExponentMatrix phase_exponents_;
};

struct GateGrad {
  ComplexMatrix unitary;  // the gate itself, shared with the derivative pass
  ComplexMatrix d_theta;
  ComplexMatrix d_phi;
};

ComplexMatrix cxy_unitary(const GateTables& t, GateParams p);
ComplexMatrix ms_unitary(const GateTables& t, GateParams p);

// d/dtheta and d/dphi of the gate, analytic: the theta derivative scales each
// projector term by its -i*eigenvalue prefactor, the phi derivative is the
// entrywise product i*C .* U.
GateGrad cxy_grad(const GateTables& t, GateParams p);
GateGrad ms_grad(const GateTables& t, GateParams p);

// Z rotation on 1-based qubit j; diagonal, no tables needed.
ComplexMatrix z_unitary(int n_qubits, int qubit, double theta);
ComplexMatrix z_grad(int n_qubits, int qubit, double theta);

// Dense generators, built by explicit Kronecker sums. These feed the slow
// expm reference path used for verification and benchmarking.
ComplexMatrix collective_x(int n_qubits);
ComplexMatrix collective_y(int n_qubits);
ComplexMatrix collective_z(int n_qubits);
ComplexMatrix xy_generator(int n_qubits, double phi);

// Reference gates via a fresh eigendecomposition of the dense generator each
// call. Slow on purpose: the independent path the table kernel is checked
// and benchmarked against.
ComplexMatrix cxy_unitary_oracle(int n_qubits, GateParams p);
ComplexMatrix ms_unitary_oracle(int n_qubits, GateParams p);
ComplexMatrix z_unitary_oracle(int n_qubits, int qubit, double theta);

}  // namespace ionforge::gatekit

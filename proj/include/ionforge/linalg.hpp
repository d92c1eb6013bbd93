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

#include <complex>

#include <Eigen/Dense>

namespace ionforge {

using Complex = std::complex<double>;

// Dense matrices are row-major throughout the project so that raw-pointer
// kernels and Eigen expressions index the same storage.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ParamVector = Eigen::VectorXd;

namespace linalg {

// Repo-wide numerical tolerances: matrices are accepted as unitary at 1e-10
// and as Hermitian at 1e-12 (max elementwise deviation).
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b);

// tr(v u^dag), accumulated entrywise; shared by every fidelity path so cost
// values agree bit-for-bit across modules.
Complex trace_overlap(const ComplexMatrix& v, const ComplexMatrix& u);

// |tr(v u^dag)|^2 / d^2 for d x d unitaries. Phase-invariant, symmetric, and
// equal to 1 exactly when u and v agree up to a global phase.
double gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& v);

double max_unitarity_defect(const ComplexMatrix& u);
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);
double max_hermitian_defect(const ComplexMatrix& m);

// Validated-on-construction wrapper: rejects non-square or non-Hermitian
// input (max |H - H^dag| > 1e-12).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

// exp(-i * scale * H) by full eigendecomposition. This is the slow trusted
// reference the cached gate kernels are verified (and benchmarked) against.
ComplexMatrix expm_hermitian_generator(const HermitianMatrix& h, double scale);

ComplexMatrix identity(Eigen::Index d);
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();

// I x ... x op x ... x I with `op` on 1-based `site`; site 1 is the leftmost
// tensor factor (most significant bit of the basis index).
ComplexMatrix embed_at(const ComplexMatrix& op, int n_qubits, int site);

}  // namespace linalg
}  // namespace ionforge

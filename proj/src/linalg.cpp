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

#include "ionforge/linalg.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ionforge::linalg {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch (" << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols() << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hadamard_product");
  return a.cwiseProduct(b);
}

Complex trace_overlap(const ComplexMatrix& v, const ComplexMatrix& u) {
  require_same_shape(v, u, "trace_overlap");
  return (v.array() * u.array().conjugate()).sum();
}

double gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_same_shape(u, v, "gate_fidelity");
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("gate_fidelity: matrices must be square");
  }
  const double d = static_cast<double>(u.rows());
  return std::norm(trace_overlap(v, u)) / (d * d);
}

double max_unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  ComplexMatrix g = u * u.adjoint();
  g.diagonal().array() -= Complex(1.0, 0.0);
  return g.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return max_unitarity_defect(u) <= tol;
}

double max_hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square");
  }
  const double defect = max_hermitian_defect(m_);
  if (!(defect <= kHermitianTol)) {
    std::ostringstream msg;
    msg << "HermitianMatrix: max |H - H^dag| = " << defect << " exceeds "
        << kHermitianTol;
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix expm_hermitian_generator(const HermitianMatrix& h, double scale) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error(
        "expm_hermitian_generator: eigendecomposition failed");
  }
  const Eigen::Index d = h.dim();
  Eigen::VectorXcd phases(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    phases(k) = std::exp(Complex(0.0, -scale * solver.eigenvalues()(k)));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

const ComplexMatrix& sigma_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
  }();
  return m;
}

const ComplexMatrix& sigma_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return s;
  }();
  return m;
}

const ComplexMatrix& sigma_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
  }();
  return m;
}

ComplexMatrix embed_at(const ComplexMatrix& op, int n_qubits, int site) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw std::invalid_argument("embed_at: op must be 2x2");
  }
  if (site < 1 || site > n_qubits) {
    std::ostringstream msg;
    msg << "embed_at: site " << site << " out of range [1, " << n_qubits
        << "]";
    throw std::invalid_argument(msg.str());
  }
  ComplexMatrix out = (site == 1) ? op : identity(2);
  for (int q = 2; q <= n_qubits; ++q) {
    out = kron(out, (q == site) ? op : identity(2));
  }
  return out;
}

}  // namespace ionforge::linalg

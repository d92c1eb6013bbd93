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

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "ionforge/gatekit.hpp"
#include "ionforge/linalg.hpp"

namespace {

using ionforge::Complex;
using ionforge::ComplexMatrix;
namespace gatekit = ionforge::gatekit;
namespace linalg = ionforge::linalg;

constexpr Complex kI{0.0, 1.0};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix to_complex(const gatekit::ProjectorMatrix& p) {
  return p.cast<double>().cast<Complex>();
}

}  // namespace

TEST_CASE("GateTables rejects out-of-range register sizes") {
  CHECK_THROWS_AS(gatekit::GateTables(0), std::invalid_argument);
  CHECK_THROWS_AS(gatekit::GateTables(13), std::invalid_argument);
  CHECK_NOTHROW(gatekit::GateTables(1));
}

TEST_CASE("GateTables hamming weights and phase exponents") {
  gatekit::GateTables t(4);
  REQUIRE(t.dim() == 16);
  for (int i = 0; i < 16; ++i)
    CHECK(t.hamming()[static_cast<std::size_t>(i)] ==
          std::popcount(static_cast<unsigned>(i)));
  // C_ij = b_i - b_j, antisymmetric, zero diagonal.
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      int expect = std::popcount(static_cast<unsigned>(i)) -
                   std::popcount(static_cast<unsigned>(j));
      CHECK(static_cast<int>(t.phase_exponents()(i, j)) == expect);
    }
}

TEST_CASE("GateTables eigenvalue lists") {
  gatekit::GateTables t3(3);
  CHECK(t3.xy_eigenvalues() == std::vector<double>{-3, -1, 1, 3});
  CHECK(t3.ms_eigenvalues() == std::vector<double>{9, 1});

  gatekit::GateTables t4(4);
  CHECK(t4.xy_eigenvalues() == std::vector<double>{-4, -2, 0, 2, 4});
  CHECK(t4.ms_eigenvalues() == std::vector<double>{16, 4, 0});
}

TEST_CASE("projectors are complete, orthogonal, and diagonalize Sx") {
  for (int n = 1; n <= 4; ++n) {
    gatekit::GateTables t(n);
    const auto d = t.dim();

    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& p : t.xy_projectors()) sum += to_complex(p);
    CHECK(max_abs_diff(sum, linalg::identity(d)) < 1e-13);

    ComplexMatrix ms_sum = ComplexMatrix::Zero(d, d);
    for (const auto& p : t.ms_projectors()) ms_sum += to_complex(p);
    CHECK(max_abs_diff(ms_sum, linalg::identity(d)) < 1e-13);

    // Defining property at phi = 0: Sx P_k = lambda_k P_k. This pins each
    // projector to its eigenvalue on the physical generator.
    ComplexMatrix sx = gatekit::collective_x(n);
    for (std::size_t k = 0; k < t.xy_projectors().size(); ++k) {
      ComplexMatrix p = to_complex(t.xy_projectors()[k]);
      CHECK(max_abs_diff(ComplexMatrix(sx * p),
                         ComplexMatrix(t.xy_eigenvalues()[k] * p)) < 1e-12);
    }
    // Same for the squared generator against the MS grouping.
    ComplexMatrix sx2 = sx * sx;
    for (std::size_t k = 0; k < t.ms_projectors().size(); ++k) {
      ComplexMatrix p = to_complex(t.ms_projectors()[k]);
      CHECK(max_abs_diff(ComplexMatrix(sx2 * p),
                         ComplexMatrix(t.ms_eigenvalues()[k] * p)) < 1e-12);
    }

    // Mutual orthogonality: P_k P_l = delta_kl P_k.
    for (std::size_t k = 0; k < t.xy_projectors().size(); ++k)
      for (std::size_t l = 0; l < t.xy_projectors().size(); ++l) {
        ComplexMatrix prod =
            to_complex(t.xy_projectors()[k]) * to_complex(t.xy_projectors()[l]);
        ComplexMatrix expect = k == l ? to_complex(t.xy_projectors()[k])
                                      : ComplexMatrix(ComplexMatrix::Zero(d, d));
        CHECK(max_abs_diff(prod, expect) < 1e-12);
      }
  }
}

TEST_CASE("single-qubit CXY matches the Rodrigues closed form") {
  gatekit::GateTables t(1);
  for (double theta : {0.0, 0.7, -2.1, 9.0})
    for (double phi : {0.0, 1.3, -0.4}) {
      ComplexMatrix u = gatekit::cxy_unitary(t, {theta, phi});
      ComplexMatrix axis =
          std::cos(phi) * linalg::sigma_x() + std::sin(phi) * linalg::sigma_y();
      ComplexMatrix expect =
          std::cos(theta / 2) * linalg::identity(2) - kI * std::sin(theta / 2) * axis;
      CHECK(max_abs_diff(u, expect) < 1e-14);
    }
}

TEST_CASE("table kernels match the eigendecomposition oracle") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> normal;
  for (int n = 1; n <= 5; ++n) {
    gatekit::GateTables t(n);
    for (int rep = 0; rep < 8; ++rep) {
      gatekit::GateParams p{2 * M_PI * normal(rng), 2 * M_PI * normal(rng)};
      CHECK(max_abs_diff(gatekit::cxy_unitary(t, p),
                         gatekit::cxy_unitary_oracle(n, p)) < 1e-12);
      CHECK(max_abs_diff(gatekit::ms_unitary(t, p),
                         gatekit::ms_unitary_oracle(n, p)) < 1e-12);
    }
  }
}

TEST_CASE("z gate matches its oracle and is diagonal") {
  for (int n = 1; n <= 4; ++n)
    for (int q = 1; q <= n; ++q) {
      double theta = 0.77 * q - 0.3 * n;
      ComplexMatrix u = gatekit::z_unitary(n, q, theta);
      CHECK(max_abs_diff(u, gatekit::z_unitary_oracle(n, q, theta)) < 1e-13);
      for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j)
          if (i != j) CHECK(std::abs(u(i, j)) == 0.0);
    }
  CHECK_THROWS_AS(gatekit::z_unitary(2, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gatekit::z_unitary(2, 3, 1.0), std::invalid_argument);
}

TEST_CASE("z qubit indexing is leftmost-MSB") {
  // Z on qubit 1 of two must equal exp(-i theta/2 sigma_z) x I.
  double theta = 0.9;
  ComplexMatrix u = gatekit::z_unitary(2, 1, theta);
  Complex lo = std::exp(-kI * (theta / 2)), hi = std::exp(kI * (theta / 2));
  CHECK(std::abs(u(0, 0) - lo) < 1e-15);
  CHECK(std::abs(u(1, 1) - lo) < 1e-15);
  CHECK(std::abs(u(2, 2) - hi) < 1e-15);
  CHECK(std::abs(u(3, 3) - hi) < 1e-15);
}

TEST_CASE("gates are unitary across the angle range") {
  gatekit::GateTables t(3);
  for (double theta : {0.1, 2.9, -7.3})
    for (double phi : {0.0, 2.2}) {
      CHECK(linalg::is_unitary(gatekit::cxy_unitary(t, {theta, phi})));
      CHECK(linalg::is_unitary(gatekit::ms_unitary(t, {theta, phi})));
    }
  CHECK(linalg::is_unitary(gatekit::z_unitary(3, 2, 1.23)));
}

TEST_CASE("analytic gate gradients match central differences") {
  const double h = 1e-6;
  std::mt19937_64 rng(202);
  std::normal_distribution<double> normal;
  for (int n : {1, 2, 3}) {
    gatekit::GateTables t(n);
    for (int rep = 0; rep < 4; ++rep) {
      gatekit::GateParams p{normal(rng), normal(rng)};

      gatekit::GateGrad cg = gatekit::cxy_grad(t, p);
      CHECK(max_abs_diff(cg.unitary, gatekit::cxy_unitary(t, p)) == 0.0);
      ComplexMatrix fd_theta = (gatekit::cxy_unitary(t, {p.theta + h, p.phi}) -
                                gatekit::cxy_unitary(t, {p.theta - h, p.phi})) /
                               (2 * h);
      ComplexMatrix fd_phi = (gatekit::cxy_unitary(t, {p.theta, p.phi + h}) -
                              gatekit::cxy_unitary(t, {p.theta, p.phi - h})) /
                             (2 * h);
      CHECK(max_abs_diff(cg.d_theta, fd_theta) < 1e-7);
      CHECK(max_abs_diff(cg.d_phi, fd_phi) < 1e-7);

      gatekit::GateGrad mg = gatekit::ms_grad(t, p);
      CHECK(max_abs_diff(mg.unitary, gatekit::ms_unitary(t, p)) == 0.0);
      fd_theta = (gatekit::ms_unitary(t, {p.theta + h, p.phi}) -
                  gatekit::ms_unitary(t, {p.theta - h, p.phi})) /
                 (2 * h);
      fd_phi = (gatekit::ms_unitary(t, {p.theta, p.phi + h}) -
                gatekit::ms_unitary(t, {p.theta, p.phi - h})) /
                (2 * h);
      CHECK(max_abs_diff(mg.d_theta, fd_theta) < 1e-7);
      CHECK(max_abs_diff(mg.d_phi, fd_phi) < 1e-7);
    }
  }

  // Z gradient: d/dtheta exp(-i theta/2 Z_q) = (-i/2) Z_q_gen U, checked by FD.
  ComplexMatrix zg = gatekit::z_grad(3, 2, 0.61);
  ComplexMatrix fd =
      (gatekit::z_unitary(3, 2, 0.61 + h) - gatekit::z_unitary(3, 2, 0.61 - h)) /
      (2 * h);
  CHECK(max_abs_diff(zg, fd) < 1e-8);
}

TEST_CASE("collective generators are Kronecker sums of Paulis") {
  for (int n : {1, 2, 3}) {
    ComplexMatrix sx = ComplexMatrix::Zero(1 << n, 1 << n);
    ComplexMatrix sy = sx, sz = sx;
    for (int q = 1; q <= n; ++q) {
      sx += linalg::embed_at(linalg::sigma_x(), n, q);
      sy += linalg::embed_at(linalg::sigma_y(), n, q);
      sz += linalg::embed_at(linalg::sigma_z(), n, q);
    }
    CHECK(max_abs_diff(gatekit::collective_x(n), sx) == 0.0);
    CHECK(max_abs_diff(gatekit::collective_y(n), sy) == 0.0);
    CHECK(max_abs_diff(gatekit::collective_z(n), sz) == 0.0);
    CHECK(max_abs_diff(gatekit::xy_generator(n, 0.8),
                       ComplexMatrix(std::cos(0.8) * sx + std::sin(0.8) * sy)) <
          1e-14);
  }
}

TEST_CASE("MS gate is symmetric under phi -> phi + pi") {
  // The squared generator is invariant when the axis flips sign.
  gatekit::GateTables t(3);
  gatekit::GateParams p{1.1, 0.6};
  gatekit::GateParams q{1.1, 0.6 + M_PI};
  CHECK(max_abs_diff(gatekit::ms_unitary(t, p), gatekit::ms_unitary(t, q)) < 1e-12);
}

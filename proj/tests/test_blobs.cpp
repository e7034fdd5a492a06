// Copyright 2026 The wigpos Authors
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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "wigpos/blobs.hpp"
#include "wigpos/uncertainty.hpp"

using namespace wigpos;
using wigpos::testing::random_pd;
using wigpos::testing::random_williamson_form;

namespace {

constexpr double kPi = std::numbers::pi;

EllipsoidSpec ellipsoid(const Matrix &m, double hbar = 1.0) {
  return EllipsoidSpec(m, PhaseSpaceContext(static_cast<int>(m.rows()) / 2, hbar));
}

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("capacity examples") {
  CHECK(capacity(ellipsoid(Matrix::Identity(2, 2))) == doctest::Approx(kPi));
  CHECK(capacity(ellipsoid(diag({4, 1}))) == doctest::Approx(kPi / 2));
  CHECK(capacity(ellipsoid(Matrix::Identity(4, 4), 0.5)) == doctest::Approx(kPi * 0.5));
}

TEST_CASE("capacity is a symplectic invariant") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const int dof = 1 + t % 3;
    const Matrix m = random_pd(rng, 2 * dof, 0.2, 4.0);
    const Matrix s = random_symplectic(rng(), dof);
    Matrix moved = s.transpose() * m * s;
    moved = 0.5 * (moved + moved.transpose());
    CHECK(std::abs(capacity(ellipsoid(moved)) - capacity(ellipsoid(m))) <= 1e-9);
  }
}

TEST_CASE("capacity scales as 1 / lambda^2") {
  std::mt19937_64 rng(42);
  const Matrix m = random_pd(rng, 4, 0.5, 2.0);
  for (double lam : {0.5, 1.5, 3.0}) {
    CHECK(capacity(ellipsoid(Matrix(lam * lam * m))) ==
          doctest::Approx(capacity(ellipsoid(m)) / (lam * lam)).epsilon(1e-12));
  }
}

TEST_CASE("admissibility examples") {
  CHECK(is_admissible(ellipsoid(Matrix::Identity(2, 2))));
  CHECK_FALSE(is_admissible(ellipsoid(2.0 * Matrix::Identity(2, 2))));
  CHECK(is_admissible(ellipsoid(diag({4, 1.0 / 9}))));
}

TEST_CASE("admissibility matches the uncertainty principle for hbar/2 M^-1") {
  std::mt19937_64 rng(43);
  int counted = 0;
  for (int t = 0; t < 1000; ++t) {
    const int dof = 1 + t % 2;
    const Matrix m = random_williamson_form(rng, dof, 0.3, 2.0);
    const auto e = ellipsoid(m);
    const CovarianceMatrix sigma(Matrix(0.5 * m.inverse()), e.ctx());
    const auto psd = check_quantum_psd(sigma);
    if (psd.verdict == Verdict::boundary) continue;
    ++counted;
    CHECK(is_admissible(e) == passes(psd.verdict));
  }
  CHECK(counted > 900);
}

TEST_CASE("section area examples") {
  CHECK(section_area(ellipsoid(Matrix::Identity(4, 4)), 1) == doctest::Approx(kPi));
  CHECK(section_area(ellipsoid(Matrix::Identity(4, 4)), 2) == doctest::Approx(kPi));
  CHECK(section_area(ellipsoid(diag({4, 1})), 1) == doctest::Approx(kPi / 2));
  const auto e = ellipsoid(diag({9, 1, 1, 4}));
  CHECK(section_area(e, 1) == doctest::Approx(kPi / 3));
  CHECK(section_area(e, 2) == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(section_area(e, 0), std::out_of_range);
  CHECK_THROWS_AS(section_area(e, 3), std::out_of_range);
}

TEST_CASE("quantum blobs can have central conjugate sections below pi hbar") {
  // S = diag(A, A^-T) with A a shear of the x plane; the (x1, p1) block of
  // (S S^T)^-1 is diag(1, 2), so the section has area pi / sqrt(2).
  Matrix a(2, 2);
  a << 1, 1, 0, 1;
  Matrix s = Matrix::Zero(4, 4);
  s.topLeftCorner(2, 2) = a;
  s.bottomRightCorner(2, 2) = a.inverse().transpose();
  const auto b = quantum_blob(s, PhaseSpacePoint(Vector::Zero(4)), PhaseSpaceContext(2, 1.0));
  CHECK(is_admissible(b.ellipsoid));
  CHECK(section_area(b.ellipsoid, 1) == doctest::Approx(kPi / std::sqrt(2.0)));
}

TEST_CASE("admissible ellipsoids project onto conjugate planes with area at least pi hbar") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 600; ++t) {
    const int dof = 1 + t % 3;
    const Matrix m = random_williamson_form(rng, dof, 0.2, 1.0);
    if (!is_admissible(ellipsoid(m))) continue;
    // Projection of Mz.z <= hbar onto (x_j, p_j) has area pi hbar sqrt(det) of
    // the matching block of M^-1.
    const Matrix inv = m.inverse();
    for (int j = 0; j < dof; ++j) {
      Matrix block(2, 2);
      block << inv(j, j), inv(j, dof + j), inv(dof + j, j), inv(dof + j, dof + j);
      CHECK(kPi * std::sqrt(block.determinant()) >= kPi * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("quantum blob examples") {
  const PhaseSpaceContext ctx(1, 1.0);
  const auto ball = quantum_blob(Matrix::Identity(2, 2), PhaseSpacePoint(0, 0), ctx);
  CHECK(capacity(ball.ellipsoid) == doctest::Approx(kPi));
  const auto sq = quantum_blob(diag({2, 0.5}), PhaseSpacePoint(1, 2), ctx);
  CHECK((sq.ellipsoid.m() - diag({0.25, 4})).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(symplectic_spectrum(sq.ellipsoid.m()).max() == doctest::Approx(1.0));
  CHECK_THROWS_AS(quantum_blob(diag({2, 2}), PhaseSpacePoint(0, 0), ctx), std::invalid_argument);
}

TEST_CASE("random quantum blobs have capacity pi hbar") {
  std::mt19937_64 rng(45);
  for (int dof = 1; dof <= 3; ++dof) {
    const PhaseSpaceContext ctx(dof, 0.7);
    for (int t = 0; t < 50; ++t) {
      const auto b = quantum_blob(random_symplectic(rng(), dof),
                                  PhaseSpacePoint(Vector::Zero(2 * dof)), ctx);
      CHECK(std::abs(capacity(b.ellipsoid) - kPi * 0.7) <= 1e-9);
      const auto spec = symplectic_spectrum(b.ellipsoid.m());
      CHECK((spec.values().array() - 1.0).abs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("contained blob examples") {
  const auto id = find_contained_blob(ellipsoid(Matrix::Identity(2, 2)));
  CHECK((id.s.transpose() * id.s - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  const auto b = find_contained_blob(ellipsoid(diag({4, 1.0 / 9})));
  CHECK(b.containment_residual >= -1e-10);
  CHECK(is_symplectic(b.s, 1e-10));
  CHECK_THROWS_AS(find_contained_blob(ellipsoid(2.0 * Matrix::Identity(2, 2))), std::domain_error);
}

TEST_CASE("contained blobs lie inside random admissible ellipsoids") {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 300; ++t) {
    const int dof = 1 + t % 3;
    const Matrix m = random_williamson_form(rng, dof, 0.1, 1.0);
    const auto e = ellipsoid(m);
    if (!is_admissible(e)) continue;
    const auto b = find_contained_blob(e);
    // Blob ellipsoid (S S^T)^-1 must dominate M in the matrix order.
    const Matrix gap = (b.s * b.s.transpose()).inverse() - m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gap + gap.transpose()));
    CHECK(es.eigenvalues()(0) >= -1e-10 * m.norm());
  }
}

TEST_CASE("EllipsoidSpec validation") {
  CHECK_THROWS_AS(ellipsoid(-Matrix::Identity(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(EllipsoidSpec(Matrix::Identity(2, 2), PhaseSpaceContext(2, 1.0)),
                  std::invalid_argument);
}

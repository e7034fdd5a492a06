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

#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "wigpos/symplectic.hpp"

using namespace wigpos;
using wigpos::testing::random_pd;
using wigpos::testing::spectrum_via_jm;

TEST_CASE("symplectic product examples") {
  const PhaseSpaceContext ctx(1, 1.0);
  CHECK(symplectic_product(PhaseSpacePoint(1, 0), PhaseSpacePoint(0, 1), ctx) == -1.0);
  CHECK(symplectic_product(PhaseSpacePoint(0, 1), PhaseSpacePoint(1, 0), ctx) == 1.0);
  CHECK(symplectic_product(PhaseSpacePoint(0.3, -2.0), PhaseSpacePoint(0.3, -2.0), ctx) == 0.0);
}

TEST_CASE("symplectic product is antisymmetric and bilinear") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int dof = 1; dof <= 3; ++dof) {
    const PhaseSpaceContext ctx(dof, 1.0);
    for (int t = 0; t < 50; ++t) {
      Vector a(2 * dof), b(2 * dof), c(2 * dof);
      for (int i = 0; i < 2 * dof; ++i) {
        a(i) = n(rng);
        b(i) = n(rng);
        c(i) = n(rng);
      }
      const double s = n(rng);
      const PhaseSpacePoint za(a), zb(b), zc(c);
      CHECK(symplectic_product(za, zb, ctx) ==
            doctest::Approx(-symplectic_product(zb, za, ctx)).epsilon(1e-14));
      const double lhs = symplectic_product(PhaseSpacePoint(Vector(a + s * c)), zb, ctx);
      const double rhs = symplectic_product(za, zb, ctx) + s * symplectic_product(zc, zb, ctx);
      CHECK(std::abs(lhs - rhs) < 1e-12);
      // p.x' - p'.x written out coordinate by coordinate.
      double direct = 0.0;
      for (int j = 0; j < dof; ++j) direct += a(dof + j) * b(j) - b(dof + j) * a(j);
      CHECK(std::abs(symplectic_product(za, zb, ctx) - direct) < 1e-12);
    }
  }
}

TEST_CASE("symplectic product rejects mismatched points") {
  const PhaseSpaceContext ctx(2, 1.0);
  CHECK_THROWS_AS(symplectic_product(PhaseSpacePoint(1, 0), PhaseSpacePoint(Vector::Zero(4)), ctx),
                  std::invalid_argument);
}

TEST_CASE("is_symplectic examples") {
  CHECK(is_symplectic(standard_j(1), 1e-12));
  Matrix d(2, 2);
  d << 2, 0, 0, 0.5;
  CHECK(is_symplectic(d, 1e-12));
  d << 2, 0, 0, 2;
  CHECK_FALSE(is_symplectic(d, 1e-12));
  CHECK_THROWS_AS(is_symplectic(Matrix::Identity(3, 3), 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(is_symplectic(Matrix::Identity(2, 4), 1e-12), std::invalid_argument);
}

TEST_CASE("random symplectic matrices are symplectic with unit determinant") {
  for (int dof = 1; dof <= 3; ++dof) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Matrix s = random_symplectic(seed, dof);
      CHECK(symplecticity_residual(s) < 1e-10);
      CHECK(std::abs(s.determinant() - 1.0) < 1e-9);
    }
  }
  CHECK(random_symplectic(5, 2) == random_symplectic(5, 2));
}

TEST_CASE("symplectic spectrum examples") {
  CHECK(symplectic_spectrum(Matrix::Identity(2, 2)).max() == doctest::Approx(1.0).epsilon(1e-14));
  Matrix m(2, 2);
  m << 4, 0, 0, 1;
  CHECK(symplectic_spectrum(m).max() == doctest::Approx(2.0).epsilon(1e-13));
  Matrix m2 = Matrix::Zero(4, 4);
  m2.diagonal() << 9, 1, 1, 4;
  const auto s2 = symplectic_spectrum(m2);
  CHECK(s2.max() == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(s2.min() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS(symplectic_spectrum(-Matrix::Identity(2, 2)), std::invalid_argument);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(symplectic_spectrum(asym), std::invalid_argument);
}

TEST_CASE("symplectic spectrum agrees with sqrt(det) for one degree of freedom") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Matrix m = random_pd(rng, 2, 0.05, 20.0);
    CHECK(symplectic_spectrum(m).max() ==
          doctest::Approx(std::sqrt(m.determinant())).epsilon(1e-10));
  }
}

TEST_CASE("symplectic spectrum agrees with eigenvalues of J M") {
  std::mt19937_64 rng(4);
  for (int dof = 1; dof <= 3; ++dof) {
    for (int t = 0; t < 100; ++t) {
      const Matrix m = random_pd(rng, 2 * dof, 0.1, 10.0);
      const auto mine = symplectic_spectrum(m);
      const auto other = spectrum_via_jm(m);
      REQUIRE(static_cast<int>(other.size()) == dof);
      for (int j = 0; j < dof; ++j) {
        CHECK(mine.values()(j) == doctest::Approx(other[j]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("symplectic spectrum is invariant under symplectic congruence") {
  std::mt19937_64 rng(5);
  for (int dof = 1; dof <= 3; ++dof) {
    for (int t = 0; t < 60; ++t) {
      const Matrix m = random_pd(rng, 2 * dof, 0.2, 5.0);
      const Matrix s = random_symplectic(rng(), dof);
      const auto a = symplectic_spectrum(m).values();
      const auto b = symplectic_spectrum(Matrix(s.transpose() * m * s)).values();
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8 * a(0));
    }
  }
}

TEST_CASE("symplectic spectrum scales linearly") {
  std::mt19937_64 rng(6);
  const Matrix m = random_pd(rng, 4, 0.5, 2.0);
  const auto a = symplectic_spectrum(m).values();
  const auto b = symplectic_spectrum(Matrix(3.5 * m)).values();
  CHECK((3.5 * a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Williamson factorization examples") {
  const auto id = williamson(Matrix::Identity(4, 4));
  CHECK(id.lambda.max() == doctest::Approx(1.0));
  CHECK(id.lambda.min() == doctest::Approx(1.0));
  CHECK(id.reconstruction_residual < 1e-12);
  CHECK(id.symplecticity_residual < 1e-12);

  Matrix m(2, 2);
  m << 4, 0, 0, 1;
  const auto w = williamson(m);
  CHECK(w.lambda.max() == doctest::Approx(2.0));
  CHECK((w.reconstruct() - m).cwiseAbs().maxCoeff() < 1e-12);
  Matrix d(2, 2);
  d << 2, 0, 0, 2;
  CHECK((w.diagonal_form() - d).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Williamson factorization reconstructs random matrices") {
  std::mt19937_64 rng(7);
  for (int dof = 1; dof <= 3; ++dof) {
    for (int t = 0; t < 100; ++t) {
      const Matrix m = random_pd(rng, 2 * dof, 0.01, 50.0);
      const auto w = williamson(m);
      CHECK(w.reconstruction_residual <= 1e-9);
      CHECK(w.symplecticity_residual <= 1e-9);
      // Residuals recomputed here rather than trusted.
      const Matrix rec = w.s.transpose() * w.diagonal_form() * w.s;
      CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff()));
      CHECK(is_symplectic(w.s, 1e-9));
    }
  }
}

TEST_CASE("Williamson factorization handles degenerate spectra") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const Matrix s = random_symplectic(rng(), 3);
    const Matrix m = s.transpose() * s;  // spectrum (1, 1, 1)
    const auto w = williamson(m);
    CHECK((w.lambda.values().array() - 1.0).abs().maxCoeff() < 1e-9);
    CHECK(w.reconstruction_residual < 1e-9);
  }
}

TEST_CASE("Williamson factorization rejects non-PD input") {
  Matrix m(2, 2);
  m << 1, 0, 0, 0;
  CHECK_THROWS_AS(williamson(m), std::invalid_argument);
  CHECK_THROWS_AS(williamson(Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("SymplecticSpectrum validates ordering and sign") {
  Vector v(2);
  v << 1.0, 2.0;
  CHECK_THROWS_AS(SymplecticSpectrum{v}, std::invalid_argument);
  v << 2.0, -1.0;
  CHECK_THROWS_AS(SymplecticSpectrum{v}, std::invalid_argument);
  v << 2.0, 1.0;
  CHECK(SymplecticSpectrum(v).min() == 1.0);
}

TEST_CASE("context and point validation") {
  CHECK_THROWS_AS(PhaseSpaceContext(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhaseSpaceContext(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PhaseSpacePoint(Vector::Zero(3)), std::invalid_argument);
}

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

#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace wigpos {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Number of degrees of freedom and the value of hbar used by every check.
class PhaseSpaceContext {
 public:
  PhaseSpaceContext(int dof, double hbar);

  int dof() const { return dof_; }
  double hbar() const { return hbar_; }
  /// Phase-space dimension 2N.
  int dim() const { return 2 * dof_; }

  bool operator==(const PhaseSpaceContext &) const = default;

 private:
  int dof_;
  double hbar_;
};

/// Point z = (x_1..x_N, p_1..p_N).
class PhaseSpacePoint {
 public:
  explicit PhaseSpacePoint(Vector coordinates);
  PhaseSpacePoint(double x, double p);

  const Vector &coords() const { return coords_; }
  int dof() const { return static_cast<int>(coords_.size()) / 2; }
  Eigen::Index size() const { return coords_.size(); }

 private:
  Vector coords_;
};

/// Standard symplectic form J = [[0, I], [-I, 0]] of size 2N.
Matrix standard_j(int dof);

/// sigma(z, z2) = z2^T J z = p.x2 - p2.x
double symplectic_product(
    const PhaseSpacePoint &z, const PhaseSpacePoint &z2,
    const PhaseSpaceContext &ctx);

/// Sup-norm residual ||S^T J S - J||.
double symplecticity_residual(const Matrix &s);

/// Throws std::invalid_argument for non-square or odd-dimensional input.
bool is_symplectic(const Matrix &s, double tol);

/// Throws std::invalid_argument unless m is symmetric with
/// min eigenvalue > 1e-12 * ||m||.
void require_symmetric_pd(const Matrix &m, const char *what);

/// Symplectic eigenvalues mu_1 >= ... >= mu_N > 0 of a symmetric
/// positive-definite matrix.
class SymplecticSpectrum {
 public:
  explicit SymplecticSpectrum(Vector values);

  const Vector &values() const { return values_; }
  double max() const { return values_(0); }
  double min() const { return values_(values_.size() - 1); }
  Eigen::Index size() const { return values_.size(); }

 private:
  Vector values_;
};

SymplecticSpectrum symplectic_spectrum(const Matrix &m);

/// M = S^T D S with D = diag(Lambda, Lambda).
struct WilliamsonFactorization {
  Matrix s;
  SymplecticSpectrum lambda;
  /// ||S^T D S - M|| / ||M|| (Frobenius).
  double reconstruction_residual;
  double symplecticity_residual;

  Matrix diagonal_form() const;
  Matrix reconstruct() const;
};

WilliamsonFactorization williamson(const Matrix &m);

/// Deterministic random symplectic matrix exp(J H1) exp(J H2) with H1, H2
/// random symmetric.
Matrix random_symplectic(std::uint64_t seed, int dof);

/// Deterministic random symmetric positive-definite matrix with eigenvalues
/// in [lo, hi], rotated by a random orthogonal matrix.
Matrix random_spd(std::uint64_t seed, int dim, double lo, double hi);

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const ComplexMatrix &h);

}  // namespace wigpos

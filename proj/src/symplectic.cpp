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

#include "wigpos/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace wigpos {

namespace {

constexpr double kPdRelTol = 1e-12;

void require_even_square(const Matrix &m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix is not square");
  }
  if (m.rows() == 0 || m.rows() % 2 != 0) {
    throw std::invalid_argument("matrix dimension must be even and positive");
  }
}

struct SymmetricRoot {
  Matrix root;
  Matrix inv_root;
};

SymmetricRoot symmetric_root(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector sq = es.eigenvalues().cwiseSqrt();
  const Matrix &v = es.eigenvectors();
  return {v * sq.asDiagonal() * v.transpose(),
          v * sq.cwiseInverse().asDiagonal() * v.transpose()};
}

// Eigenpairs of i * M^{1/2} J M^{1/2} with positive eigenvalue, descending.
// Eigenvalues of the Hermitian matrix come in +-mu pairs; the positive half
// carries the symplectic spectrum and (through real and imaginary parts of
// the eigenvectors) the real orthogonal block form.
struct PositiveHalf {
  Vector mu;
  ComplexMatrix vectors;
};

PositiveHalf positive_half(const Matrix &root, int dof) {
  const Matrix a = root * standard_j(dof) * root;
  const ComplexMatrix h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  PositiveHalf out{Vector(dof), ComplexMatrix(2 * dof, dof)};
  for (int j = 0; j < dof; ++j) {
    const int src = 2 * dof - 1 - j;  // ascending order from Eigen
    out.mu(j) = es.eigenvalues()(src);
    out.vectors.col(j) = es.eigenvectors().col(src);
  }
  return out;
}

}  // namespace

PhaseSpaceContext::PhaseSpaceContext(int dof, double hbar)
    : dof_(dof), hbar_(hbar) {
  if (dof < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("hbar must be positive and finite");
  }
}

PhaseSpacePoint::PhaseSpacePoint(Vector coordinates)
    : coords_(std::move(coordinates)) {
  if (coords_.size() == 0 || coords_.size() % 2 != 0) {
    throw std::invalid_argument("phase-space point needs 2N coordinates");
  }
}

PhaseSpacePoint::PhaseSpacePoint(double x, double p) : coords_(2) {
  coords_ << x, p;
}

Matrix standard_j(int dof) {
  Matrix j = Matrix::Zero(2 * dof, 2 * dof);
  j.topRightCorner(dof, dof).setIdentity();
  j.bottomLeftCorner(dof, dof) = -Matrix::Identity(dof, dof);
  return j;
}

double symplectic_product(
    const PhaseSpacePoint &z, const PhaseSpacePoint &z2,
    const PhaseSpaceContext &ctx) {
  if (z.size() != ctx.dim() || z2.size() != ctx.dim()) {
    throw std::invalid_argument("symplectic_product: dimension mismatch");
  }
  const int n = ctx.dof();
  const auto &a = z.coords();
  const auto &b = z2.coords();
  return a.tail(n).dot(b.head(n)) - b.tail(n).dot(a.head(n));
}

double symplecticity_residual(const Matrix &s) {
  require_even_square(s);
  const Matrix j = standard_j(static_cast<int>(s.rows()) / 2);
  return (s.transpose() * j * s - j).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Matrix &s, double tol) {
  return symplecticity_residual(s) <= tol;
}

void require_symmetric_pd(const Matrix &m, const char *what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(es.eigenvalues()(0) > kPdRelTol * norm)) {
    throw std::invalid_argument(
        std::string(what) + ": matrix is not positive definite");
  }
}

SymplecticSpectrum::SymplecticSpectrum(Vector values)
    : values_(std::move(values)) {
  if (values_.size() == 0) {
    throw std::invalid_argument("empty symplectic spectrum");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_(i) > 0.0)) {
      throw std::invalid_argument("symplectic spectrum must be positive");
    }
    if (i > 0 && values_(i) > values_(i - 1)) {
      throw std::invalid_argument("symplectic spectrum must be descending");
    }
  }
}

SymplecticSpectrum symplectic_spectrum(const Matrix &m) {
  require_even_square(m);
  require_symmetric_pd(m, "symplectic_spectrum");
  const Matrix sym = 0.5 * (m + m.transpose());
  const auto root = symmetric_root(sym);
  return SymplecticSpectrum(
      positive_half(root.root, static_cast<int>(m.rows()) / 2).mu);
}

Matrix WilliamsonFactorization::diagonal_form() const {
  const auto n = lambda.size();
  Vector d(2 * n);
  d << lambda.values(), lambda.values();
  return d.asDiagonal();
}

Matrix WilliamsonFactorization::reconstruct() const {
  return s.transpose() * diagonal_form() * s;
}

WilliamsonFactorization williamson(const Matrix &m) {
  require_even_square(m);
  require_symmetric_pd(m, "williamson");
  const int n = static_cast<int>(m.rows()) / 2;
  const Matrix sym = 0.5 * (m + m.transpose());
  const auto root = symmetric_root(sym);
  const auto half = positive_half(root.root, n);

  // Columns of O: x_j = sqrt(2) Im(u_j), p_j = sqrt(2) Re(u_j), so that
  // M^{1/2} J M^{1/2} = O J D O^T.
  Matrix o(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    o.col(j) = std::sqrt(2.0) * half.vectors.col(j).imag();
    o.col(n + j) = std::sqrt(2.0) * half.vectors.col(j).real();
  }
  Vector d_inv_sqrt(2 * n);
  d_inv_sqrt << half.mu.cwiseSqrt().cwiseInverse(),
      half.mu.cwiseSqrt().cwiseInverse();

  WilliamsonFactorization f{
      d_inv_sqrt.asDiagonal() * o.transpose() * root.root,
      SymplecticSpectrum(half.mu), 0.0, 0.0};
  f.reconstruction_residual = (f.reconstruct() - m).norm() / m.norm();
  f.symplecticity_residual = symplecticity_residual(f.s);
  if (!std::isfinite(f.reconstruction_residual) ||
      f.reconstruction_residual > 1e-8 || f.symplecticity_residual > 1e-8) {
    throw std::runtime_error(
        "williamson: factorization did not converge (reconstruction residual " +
        std::to_string(f.reconstruction_residual) + ", symplecticity residual " +
        std::to_string(f.symplecticity_residual) + ")");
  }
  return f;
}

Matrix random_symplectic(std::uint64_t seed, int dof) {
  if (dof < 1) throw std::invalid_argument("random_symplectic: dof must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.4);
  const Matrix j = standard_j(dof);
  Matrix s = Matrix::Identity(2 * dof, 2 * dof);
  for (int k = 0; k < 2; ++k) {
    Matrix h(2 * dof, 2 * dof);
    for (int r = 0; r < 2 * dof; ++r) {
      for (int c = r; c < 2 * dof; ++c) {
        h(r, c) = h(c, r) = normal(rng);
      }
    }
    const Matrix jh = j * h;
    s = s * Matrix(jh.exp());
  }
  return s;
}

Matrix random_spd(std::uint64_t seed, int dim, double lo, double hi) {
  if (dim < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("random_spd: invalid arguments");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(lo, hi);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ();
  Vector ev(dim);
  for (int i = 0; i < dim; ++i) ev(i) = uni(rng);
  Matrix m = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

double min_hermitian_eigenvalue(const ComplexMatrix &h) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace wigpos

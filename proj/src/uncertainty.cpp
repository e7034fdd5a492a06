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

#include "wigpos/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wigpos {

namespace {

Verdict classify(double margin, double band) {
  if (margin > band) return Verdict::pass;
  if (margin >= -band) return Verdict::boundary;
  return Verdict::fail;
}

Verdict worst(Verdict a, Verdict b) {
  return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::boundary:
      return "boundary";
    case Verdict::fail:
      return "fail";
  }
  return "unknown";
}

CovarianceMatrix::CovarianceMatrix(Matrix sigma, PhaseSpaceContext ctx)
    : CovarianceMatrix(sigma, Vector::Zero(sigma.rows()), ctx) {}

CovarianceMatrix::CovarianceMatrix(Matrix sigma, Vector mean,
                                   PhaseSpaceContext ctx)
    : sigma_(std::move(sigma)), mean_(std::move(mean)), ctx_(ctx) {
  if (sigma_.rows() != ctx_.dim() || sigma_.cols() != ctx_.dim()) {
    throw std::invalid_argument("CovarianceMatrix: expected a 2N x 2N matrix");
  }
  if (mean_.size() != ctx_.dim()) {
    throw std::invalid_argument("CovarianceMatrix: mean has wrong length");
  }
  if (!sigma_.allFinite()) {
    throw std::invalid_argument("CovarianceMatrix: non-finite entries");
  }
  const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric");
  }
  sigma_ = 0.5 * (sigma_ + sigma_.transpose());
  if (!(sigma_.diagonal().minCoeff() > 0.0)) {
    throw std::invalid_argument("CovarianceMatrix: variances must be positive");
  }
}

double CovarianceMatrix::norm() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

CovarianceMatrix CovarianceMatrix::with_hbar(double hbar) const {
  return CovarianceMatrix(sigma_, mean_, PhaseSpaceContext(ctx_.dof(), hbar));
}

CovarianceMatrix covariance_from_grid(const WignerGrid &w,
                                      CovarianceDiagnostics *diag) {
  const auto &xa = w.x_axis();
  const auto &pa = w.p_axis();
  const Matrix &v = w.values();
  const double area = w.cell_area();

  // Row-ordered accumulation keeps the sums reproducible.
  double m0 = 0.0, mx = 0.0, mp = 0.0, mxx = 0.0, mpp = 0.0, mxp = 0.0;
  double second_abs = 0.0, frame_abs = 0.0;
  for (int i = 0; i < xa.count(); ++i) {
    const double x = xa[i];
    for (int j = 0; j < pa.count(); ++j) {
      const double p = pa[j];
      const double f = v(i, j);
      m0 += f;
      mx += x * f;
      mp += p * f;
      mxx += x * x * f;
      mpp += p * p * f;
      mxp += x * p * f;
      const double s = (x * x + p * p) * std::abs(f);
      second_abs += s;
      if (i == 0 || j == 0 || i == xa.count() - 1 || j == pa.count() - 1) {
        frame_abs += s;
      }
    }
  }
  m0 *= area;
  if (!(std::abs(m0) > 0.0)) {
    throw std::invalid_argument("covariance_from_grid: grid has zero mass");
  }
  // Moments are normalized by the mass, so unit-trace grids are unaffected.
  const double ex = mx * area / m0, ep = mp * area / m0;
  Matrix sigma(2, 2);
  sigma(0, 0) = mxx * area / m0 - ex * ex;
  sigma(1, 1) = mpp * area / m0 - ep * ep;
  sigma(0, 1) = sigma(1, 0) = mxp * area / m0 - ex * ep;
  if (diag != nullptr) {
    diag->boundary_share = second_abs > 0.0 ? frame_abs / second_abs : 0.0;
    diag->heavy_tail = diag->boundary_share > 1e-6;
  }
  Vector mean(2);
  mean << ex, ep;
  return CovarianceMatrix(sigma, mean, w.ctx());
}

RsReport check_rs(const CovarianceMatrix &cov) {
  const Matrix &s = cov.sigma();
  const int n = cov.ctx().dof();
  const double hbar = cov.ctx().hbar();
  const double norm = cov.norm();
  const double band = kBoundaryBand * norm * norm;
  RsReport out{{}, Verdict::pass};
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double lhs = s(j, j) * s(n + k, n + k);
      const double c = s(j, n + k);
      const double rhs = c * c + (j == k ? 0.25 * hbar * hbar : 0.0);
      const double margin = lhs - rhs;
      const Verdict v = classify(margin, band);
      out.pairs.push_back({j, k, lhs, rhs, margin, v});
      out.verdict = worst(out.verdict, v);
    }
  }
  return out;
}

PsdResult check_quantum_psd(const CovarianceMatrix &cov) {
  const int n = cov.ctx().dof();
  const ComplexMatrix h =
      cov.sigma().cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5 * cov.ctx().hbar()) *
          standard_j(n).cast<std::complex<double>>();
  const double min_ev = min_hermitian_eigenvalue(h);
  const double tol = kBoundaryBand * cov.norm();
  return {classify(min_ev, tol), min_ev, tol};
}

WilliamsonCriterion check_williamson_criterion(const CovarianceMatrix &cov) {
  const auto spec = symplectic_spectrum(cov.sigma());
  const double margin = spec.min() - 0.5 * cov.ctx().hbar();
  return {classify(margin, kBoundaryBand * cov.norm()), spec.min(), spec.max()};
}

CovarianceMatrix rescale_covariance(const CovarianceMatrix &cov,
                                    RescaleParameter lambda) {
  const double l2 = lambda.value() * lambda.value();
  return CovarianceMatrix(cov.sigma() / l2, cov.mean() / lambda.value(),
                          cov.ctx());
}

LambdaStar lambda_star(const CovarianceMatrix &cov) {
  const auto spec = symplectic_spectrum(cov.sigma());
  const double value = std::sqrt(2.0 * spec.min() / cov.ctx().hbar());
  return {value, !passes(check_quantum_psd(cov).verdict)};
}

UncertaintyReport uncertainty_report(const CovarianceMatrix &cov) {
  UncertaintyReport r{cov.ctx().hbar(),
                      check_rs(cov),
                      check_quantum_psd(cov),
                      check_williamson_criterion(cov),
                      lambda_star(cov),
                      Verdict::pass};
  r.verdict = r.psd.verdict;
  return r;
}

std::vector<UncertaintyReport> hbar_sweep(const WignerGrid &w,
                                          const std::vector<double> &hbars) {
  const CovarianceMatrix cov = covariance_from_grid(w);
  std::vector<UncertaintyReport> out;
  out.reserve(hbars.size());
  for (double h : hbars) out.push_back(uncertainty_report(cov.with_hbar(h)));
  return out;
}

RsGapSearch search_rs_gap(std::uint64_t seed, int trials, int dof, double hbar) {
  RsGapSearch out;
  const PhaseSpaceContext ctx(dof, hbar);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> nu(0.2, 1.5);
  for (int t = 0; t < trials; ++t) {
    // Williamson form with random symplectic eigenvalues, some below hbar/2.
    const Matrix s = random_symplectic(rng(), dof);
    Vector d(2 * dof);
    for (int j = 0; j < dof; ++j) d(j) = d(dof + j) = 0.5 * hbar * nu(rng);
    Matrix sigma = s.transpose() * d.asDiagonal() * s;
    sigma = 0.5 * (sigma + sigma.transpose());
    const CovarianceMatrix cov(sigma, ctx);
    ++out.trials;
    if (check_rs(cov).verdict != Verdict::pass) continue;
    ++out.rs_pass;
    if (check_quantum_psd(cov).verdict == Verdict::fail) {
      if (out.counterexamples == 0) out.example = sigma;
      ++out.counterexamples;
    }
  }
  return out;
}

}  // namespace wigpos

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

#include "wigpos/klm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "wigpos/uncertainty.hpp"

namespace wigpos {

namespace {

// Multiples of the dual length scale tried in rotation.
constexpr std::array<double, 5> kScales = {0.25, 0.4, 0.6, 0.8, 1.0};

constexpr std::array<std::array<int, 2>, 9> kLattice = {{
    {0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}, {1, -1}, {-1, 1},
}};

// Cholesky factor of the dual covariance (J^T Sigma J)^{-1}; F_sigma W of a
// Gaussian decays on this scale.
Matrix dual_scale(const WignerGrid &w) {
  const double hbar = w.ctx().hbar();
  Matrix sigma = 0.5 * hbar * Matrix::Identity(2, 2);
  try {
    const Matrix s = covariance_from_grid(w).sigma();
    require_symmetric_pd(s, "klm");
    sigma = s;
  } catch (const std::invalid_argument &) {
  }
  const Matrix j = standard_j(1);
  const Matrix dual = (j.transpose() * sigma * j).inverse();
  return Eigen::LLT<Matrix>(0.5 * (dual + dual.transpose())).matrixL();
}

ComplexVector min_eigenvector(const ComplexMatrix &f, double *min_ev) {
  const ComplexMatrix h = 0.5 * (f + f.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  *min_ev = es.eigenvalues()(0);
  return es.eigenvectors().col(0);
}

double quadratic_form(const ComplexMatrix &f, const ComplexVector &v) {
  return (v.adjoint() * f * v)(0, 0).real();
}

bool inside_band(const SymplecticFourier &fsw,
                 const std::vector<PhaseSpacePoint> &pts) {
  for (const auto &a : pts) {
    for (const auto &b : pts) {
      const Vector d = a.coords() - b.coords();
      if (std::abs(d(0)) >= fsw.max_abs_x() || std::abs(d(1)) >= fsw.max_abs_p()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::string to_string(PointStrategy s) {
  switch (s) {
    case PointStrategy::random:
      return "random";
    case PointStrategy::lattice:
      return "lattice";
    case PointStrategy::user:
      return "user";
  }
  return "unknown";
}

std::string to_string(KLMOutcome o) {
  return o == KLMOutcome::violation_certificate ? "violation_certificate"
                                                : "no_violation_found";
}

double KLMMatrix::min_eigenvalue() const {
  double ev = 0.0;
  min_eigenvector(entries, &ev);
  return ev;
}

KLMMatrix klm_matrix(const SymplecticFourier &fsw, const KLMPointSet &set,
                     const PhaseSpaceContext &ctx, int phase_sign) {
  if (set.points.empty()) {
    throw std::invalid_argument("klm_matrix: empty point set");
  }
  if (phase_sign != 1 && phase_sign != -1) {
    throw std::invalid_argument("klm_matrix: phase sign must be +1 or -1");
  }
  const auto m = static_cast<int>(set.points.size());
  ComplexMatrix f(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const auto &zj = set.points[j];
      const auto &zk = set.points[k];
      const PhaseSpacePoint diff(Vector(zj.coords() - zk.coords()));
      const double phase =
          phase_sign * 0.5 * ctx.hbar() * symplectic_product(zj, zk, ctx);
      f(j, k) = std::polar(1.0, phase) * fsw(diff);
    }
  }
  const double herm = (f - f.adjoint()).cwiseAbs().maxCoeff();
  return {f, herm};
}

KLMReport klm_check(const WignerGrid &w, const KLMOptions &opt) {
  if (opt.max_order < 1 || opt.trials_per_order < 1) {
    throw std::invalid_argument("klm_check: order and trial budget must be >= 1");
  }
  const double tr = trace(w);
  if (std::abs(tr - 1.0) > 1e-3) {
    throw std::invalid_argument("klm_check: grid trace is not 1 within 1e-3");
  }
  const SymplecticFourier fsw(w);
  const Matrix scale = dual_scale(w);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  KLMReport report{{}, KLMOutcome::no_violation_found, opt, 0.0, 0.0,
                   fsw.decay_warning(), fsw.boundary_mass()};
  report.worst_min_eigenvalue = std::numeric_limits<double>::infinity();

  for (int m = 1; m <= opt.max_order; ++m) {
    KLMOrderRecord rec{m, 0, std::numeric_limits<double>::infinity(), std::nullopt};
    const int trials = (m == 1) ? 1 : opt.trials_per_order;
    for (int t = 0; t < trials; ++t) {
      KLMPointSet set;
      set.seed = opt.seed;
      const double s = kScales[static_cast<std::size_t>(t) % kScales.size()];
      const bool use_lattice = m > 1 && m <= static_cast<int>(kLattice.size()) &&
                               t % 4 == 3;
      if (m == 1) {
        set.points.emplace_back(0.0, 0.0);
        set.strategy = PointStrategy::lattice;
      } else if (use_lattice) {
        set.strategy = PointStrategy::lattice;
        for (int k = 0; k < m; ++k) {
          Vector u(2);
          u << kLattice[k][0], kLattice[k][1];
          set.points.emplace_back(Vector(2.0 * s * scale * u));
        }
      } else {
        set.strategy = PointStrategy::random;
        for (int k = 0; k < m; ++k) {
          Vector u(2);
          u << normal(rng), normal(rng);
          set.points.emplace_back(Vector(s * scale * u));
        }
      }
      ++rec.trials;
      if (!inside_band(fsw, set.points)) continue;
      const KLMMatrix f = klm_matrix(fsw, set, w.ctx(), opt.phase_sign);
      report.max_hermiticity_residual =
          std::max(report.max_hermiticity_residual, f.hermiticity_residual);
      double ev = 0.0;
      const ComplexVector v = min_eigenvector(f.entries, &ev);
      rec.worst_min_eigenvalue = std::min(rec.worst_min_eigenvalue, ev);
      if (ev < -opt.tolerance) {
        rec.witness = KLMWitness{set.points, v, quadratic_form(f.entries, v)};
        break;
      }
    }
    report.worst_min_eigenvalue =
        std::min(report.worst_min_eigenvalue, rec.worst_min_eigenvalue);
    const bool found = rec.witness.has_value();
    report.orders.push_back(std::move(rec));
    if (found) {
      report.outcome = KLMOutcome::violation_certificate;
      break;
    }
  }
  return report;
}

double reevaluate_witness(const WignerGrid &w, const KLMWitness &witness,
                          int phase_sign) {
  const SymplecticFourier fsw(w);
  KLMPointSet set{witness.points, PointStrategy::user, 0};
  const KLMMatrix f = klm_matrix(fsw, set, w.ctx(), phase_sign);
  return quadratic_form(f.entries, witness.eigenvector);
}

}  // namespace wigpos

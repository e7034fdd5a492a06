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

#include "wigpos/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wigpos/nelder_mead.hpp"
#include "wigpos/uncertainty.hpp"

namespace wigpos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMuCap = 1e6;

// Largest rate r with |f(x)| <= cap * exp(-r x^2 / 2 hbar) on the tail
// region |x| >= 2 * (standard deviation of |f|^2).
double tail_rate(const AxisGrid &axis, const ComplexVector &f, double hbar,
                 double cap_factor, double floor) {
  const Vector mag = f.cwiseAbs();
  const double peak = mag.maxCoeff();
  if (!(peak > 0.0)) throw std::invalid_argument("hardy_fit: all-zero input");
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < axis.count(); ++i) {
    const double w = mag(i) * mag(i);
    m0 += w;
    m1 += axis[i] * w;
    m2 += axis[i] * axis[i] * w;
  }
  const double mean = m1 / m0;
  const double sd = std::sqrt(std::max(m2 / m0 - mean * mean, 0.0));
  const double cap = cap_factor * peak;
  double rate = kInf;
  for (int i = 0; i < axis.count(); ++i) {
    const double x = axis[i];
    if (std::abs(x) < 2.0 * sd || x == 0.0) continue;
    if (!(mag(i) > floor * peak)) continue;
    rate = std::min(rate, 2.0 * hbar * std::log(cap / mag(i)) / (x * x));
  }
  return rate;
}

struct PositiveSample {
  double x;
  double p;
  double log_w;
};

Matrix shape_from_params(const Vector &theta) {
  Matrix l = Matrix::Zero(2, 2);
  l(0, 0) = std::exp(theta(0));
  l(1, 0) = theta(1);
  l(1, 1) = std::exp(theta(2));
  const Matrix m = l * l.transpose();
  return m / std::sqrt(m.determinant());  // mu_1 = sqrt(det M) for N = 1
}

Vector params_from_shape(const Matrix &m) {
  const Matrix l = Eigen::LLT<Matrix>(m).matrixL();
  Vector theta(3);
  theta << std::log(l(0, 0)), l(1, 0), std::log(l(1, 1));
  return theta;
}

// Largest t with W(z) <= C_max exp(-t Mhat z.z / hbar) on all samples.
double feasible_scale(const std::vector<PositiveSample> &pts, const Matrix &shape,
                      double hbar, double log_cmax) {
  double t = kInf;
  for (const auto &s : pts) {
    const double q = (shape(0, 0) * s.x * s.x + 2.0 * shape(0, 1) * s.x * s.p +
                      shape(1, 1) * s.p * s.p) /
                     hbar;
    if (q <= 0.0) continue;
    t = std::min(t, (log_cmax - s.log_w) / q);
  }
  return t;
}

double quad(const Matrix &m, double x, double p) {
  return m(0, 0) * x * x + 2.0 * m(0, 1) * x * p + m(1, 1) * p * p;
}

}  // namespace

std::string to_string(HardyVerdict v) {
  switch (v) {
    case HardyVerdict::consistent:
      return "consistent";
    case HardyVerdict::boundary:
      return "boundary";
    case HardyVerdict::inconsistent:
      return "inconsistent";
  }
  return "unknown";
}

std::string to_string(DominationVerdict v) {
  switch (v) {
    case DominationVerdict::compatible:
      return "compatible";
    case DominationVerdict::boundary:
      return "boundary";
    case DominationVerdict::not_a_wigner_distribution:
      return "not_a_wigner_distribution";
  }
  return "unknown";
}

HardyPair hardy_fit(const WaveFunctionGrid &psi, const HardyOptions &opt) {
  if (!(opt.cap_factor >= 1.0)) {
    throw std::invalid_argument("hardy_fit: cap factor must be >= 1");
  }
  if (!(psi.values.cwiseAbs().maxCoeff() > 0.0)) {
    throw std::invalid_argument("hardy_fit: all-zero input");
  }
  const double hbar = psi.ctx.hbar();
  const WaveFunctionGrid phi = fourier_transform(psi, psi.axis);
  HardyPair out;
  out.a = tail_rate(psi.axis, psi.values, hbar, opt.cap_factor, opt.noise_floor);
  out.b = tail_rate(phi.axis, phi.values, hbar, opt.cap_factor, opt.noise_floor);
  out.c_psi = opt.cap_factor * psi.values.cwiseAbs().maxCoeff();
  out.c_fourier = opt.cap_factor * phi.values.cwiseAbs().maxCoeff();
  out.product = (std::isinf(out.a) || std::isinf(out.b)) ? kInf : out.a * out.b;
  if (out.product > 1.0 + opt.band) {
    out.verdict = HardyVerdict::inconsistent;
  } else if (out.product >= 1.0 - opt.band) {
    out.verdict = HardyVerdict::boundary;
  } else {
    out.verdict = HardyVerdict::consistent;
  }
  return out;
}

DominationVerdict theorem1_verdict(double mu1, double band) {
  if (mu1 > 1.0 + band) return DominationVerdict::not_a_wigner_distribution;
  if (mu1 >= 1.0 - band) return DominationVerdict::boundary;
  return DominationVerdict::compatible;
}

DominationVerdict theorem1_verdict(const DominationCertificate &cert) {
  return theorem1_verdict(cert.mu1);
}

DominationCertificate fit_dominating_gaussian(const WignerGrid &w,
                                              const DominationOptions &opt) {
  if (!(opt.c_max_factor >= 1.0)) {
    throw std::invalid_argument("fit_dominating_gaussian: C_max factor must be >= 1");
  }
  const double hbar = w.ctx().hbar();
  const double max_w = w.values().maxCoeff();
  if (!(max_w > 0.0)) {
    throw std::invalid_argument("fit_dominating_gaussian: W has no positive part");
  }
  const double floor_value = std::max(0.0, opt.noise_floor * w.peak());
  std::vector<PositiveSample> pts;
  for (int i = 0; i < w.x_axis().count(); ++i) {
    for (int j = 0; j < w.p_axis().count(); ++j) {
      const double v = w.values()(i, j);
      if (v > floor_value) pts.push_back({w.x_axis()[i], w.p_axis()[j], std::log(v)});
    }
  }
  const double c_max = opt.c_max_factor * max_w;
  const double log_cmax = std::log(c_max);

  auto objective = [&](const Vector &theta) {
    const Matrix shape = shape_from_params(theta);
    if (!shape.allFinite()) return kInf;
    return -std::min(feasible_scale(pts, shape, hbar, log_cmax), kMuCap);
  };

  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(3));
  try {
    const Matrix sigma = covariance_from_grid(w).sigma();
    require_symmetric_pd(sigma, "fit_dominating_gaussian");
    starts.push_back(params_from_shape(sigma.inverse()));
  } catch (const std::invalid_argument &) {
  }

  NelderMeadOptions nm;
  nm.max_evaluations = opt.max_evaluations;
  nm.initial_step = 0.2;
  Vector best_theta = starts.front();
  double best_mu = -kInf;
  int evals = 0;
  bool converged = true;
  for (const auto &s : starts) {
    // Restart once from the end point; simplex search stalls on the kinks of
    // the min-of-constraints objective.
    NelderMeadResult r = nelder_mead(objective, s, nm);
    NelderMeadResult r2 = nelder_mead(objective, r.x, nm);
    evals += r.evaluations + r2.evaluations;
    converged = converged && r2.converged;
    if (-r2.value > best_mu) {
      best_mu = -r2.value;
      best_theta = r2.x;
    }
  }

  const Matrix shape = shape_from_params(best_theta);
  const double t = std::min(feasible_scale(pts, shape, hbar, log_cmax), kMuCap);
  const bool unbounded = !(t < kMuCap);
  Matrix m = t * (1.0 - 1e-12) * shape;
  m = 0.5 * (m + m.transpose());

  double c = 0.0;
  for (const auto &s : pts) {
    c = std::max(c, std::exp(s.log_w + quad(m, s.x, s.p) / hbar));
  }
  if (!(c > 0.0)) c = max_w;
  c *= 1.0 + 1e-12;

  const auto spectrum = symplectic_spectrum(m);
  DominationCertificate cert{m,
                             c,
                             c_max,
                             spectrum,
                             spectrum.max(),
                             DominationVerdict::compatible,
                             evals,
                             converged,
                             unbounded,
                             0.0};
  cert.verdict = theorem1_verdict(cert.mu1, opt.boundary_band);

  double worst = 0.0;
  for (int i = 0; i < w.x_axis().count(); ++i) {
    for (int j = 0; j < w.p_axis().count(); ++j) {
      const double v = w.values()(i, j);
      if (v <= floor_value) continue;
      const double bound =
          c * std::exp(-quad(m, w.x_axis()[i], w.p_axis()[j]) / hbar);
      worst = std::max(worst, v / bound);
    }
  }
  cert.worst_ratio = worst;
  return cert;
}

bool verify_domination(const WignerGrid &w, const DominationCertificate &cert) {
  const double hbar = w.ctx().hbar();
  for (int i = 0; i < w.x_axis().count(); ++i) {
    for (int j = 0; j < w.p_axis().count(); ++j) {
      const double v = w.values()(i, j);
      if (v <= 0.0) continue;
      const double bound =
          cert.c * std::exp(-quad(cert.m, w.x_axis()[i], w.p_axis()[j]) / hbar);
      if (v > bound) return false;
    }
  }
  return true;
}

CompactSupport compact_support_flag(const WignerGrid &w, double threshold) {
  const double level = threshold * w.peak();
  const int nx = w.x_axis().count();
  const int np = w.p_axis().count();
  CompactSupport out{false, nx, -1, np, -1};
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) {
      if (std::abs(w.values()(i, j)) > level) {
        out.x_lo = std::min(out.x_lo, i);
        out.x_hi = std::max(out.x_hi, i);
        out.p_lo = std::min(out.p_lo, j);
        out.p_hi = std::max(out.p_hi, j);
      }
    }
  }
  out.flag = out.x_hi >= 0 && out.x_lo > 0 && out.x_hi < nx - 1 && out.p_lo > 0 &&
             out.p_hi < np - 1;
  return out;
}

}  // namespace wigpos

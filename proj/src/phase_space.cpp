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

#include "wigpos/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wigpos {

namespace {

using cdouble = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_single_dof(const PhaseSpaceContext &ctx, const char *what) {
  if (ctx.dof() != 1) {
    throw std::invalid_argument(std::string(what) +
                                ": grid states support one degree of freedom");
  }
}

double keys_weight(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t < 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

}  // namespace

AxisGrid::AxisGrid(double min, double max, int count)
    : min_(min), max_(max), count_(count) {
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw std::invalid_argument("AxisGrid: need finite min < max");
  }
  if (count < 16) throw std::invalid_argument("AxisGrid: count must be >= 16");
}

AxisGrid AxisGrid::centered(double half_extent, int count) {
  if (!(half_extent > 0.0)) {
    throw std::invalid_argument("AxisGrid: half extent must be positive");
  }
  const double dx = 2.0 * half_extent / count;
  return AxisGrid(-half_extent, -half_extent + (count - 1) * dx, count);
}

AxisGrid default_axis(const PhaseSpaceContext &ctx, int count,
                      double half_extent_units) {
  return AxisGrid::centered(half_extent_units * std::sqrt(ctx.hbar()), count);
}

double WaveFunctionGrid::norm() const {
  return values.squaredNorm() * axis.spacing();
}

WignerGrid::WignerGrid(AxisGrid x_axis, AxisGrid p_axis, Matrix values,
                       PhaseSpaceContext ctx)
    : x_axis_(x_axis), p_axis_(p_axis), values_(std::move(values)), ctx_(ctx) {
  require_single_dof(ctx_, "WignerGrid");
  if (values_.rows() != x_axis_.count() || values_.cols() != p_axis_.count()) {
    throw std::invalid_argument("WignerGrid: values do not match the axes");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("WignerGrid: non-finite values");
  }
  mass_ = values_.sum() * cell_area();
}

WignerGrid WignerGrid::with_hbar(double hbar) const {
  return WignerGrid(x_axis_, p_axis_, values_, PhaseSpaceContext(1, hbar));
}

WignerGrid WignerGrid::scaled(double factor) const {
  return WignerGrid(x_axis_, p_axis_, factor * values_, ctx_);
}

MixtureSpec::MixtureSpec(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("MixtureSpec: no components");
  }
  double total = 0.0;
  for (const auto &c : components_) {
    if (!(c.weight > 0.0)) {
      throw std::invalid_argument("MixtureSpec: weights must be positive");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("MixtureSpec: weights must sum to 1");
  }
}

RescaleParameter::RescaleParameter(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("rescale: lambda must be positive");
  }
}

WaveFunctionGrid fock_state(int n, const AxisGrid &axis,
                            const PhaseSpaceContext &ctx) {
  require_single_dof(ctx, "fock_state");
  if (n < 0) throw std::invalid_argument("fock_state: n must be >= 0");
  const double hbar = ctx.hbar();
  const double norm0 = std::pow(kPi * hbar, -0.25);
  ComplexVector values(axis.count());
  for (int i = 0; i < axis.count(); ++i) {
    const double xi = axis[i] / std::sqrt(hbar);
    double prev = 0.0;
    double cur = norm0 * std::exp(-0.5 * xi * xi);
    for (int k = 0; k < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * xi * cur -
                          std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    values(i) = cur;
  }
  const double edge =
      std::max(std::abs(values(0)), std::abs(values(axis.count() - 1)));
  if (edge >= 1e-12) {
    throw std::invalid_argument(
        "fock_state: grid too narrow, boundary amplitude " +
        std::to_string(edge));
  }
  return {axis, values, ctx};
}

WaveFunctionGrid gaussian_state(double squeeze, double x0, double p0,
                                const AxisGrid &axis,
                                const PhaseSpaceContext &ctx) {
  require_single_dof(ctx, "gaussian_state");
  if (!(squeeze > 0.0)) {
    throw std::invalid_argument("gaussian_state: squeeze must be positive");
  }
  const double hbar = ctx.hbar();
  const double amp = std::pow(squeeze / (kPi * hbar), 0.25);
  ComplexVector values(axis.count());
  for (int i = 0; i < axis.count(); ++i) {
    const double d = axis[i] - x0;
    values(i) = amp * std::exp(-squeeze * d * d / (2.0 * hbar)) *
                std::polar(1.0, p0 * axis[i] / hbar);
  }
  return {axis, values, ctx};
}

WaveFunctionGrid fourier_transform(const WaveFunctionGrid &psi,
                                   const AxisGrid &p_axis) {
  const double hbar = psi.ctx.hbar();
  const double pref = psi.axis.spacing() / std::sqrt(2.0 * kPi * hbar);
  ComplexVector out(p_axis.count());
  for (int m = 0; m < p_axis.count(); ++m) {
    cdouble acc = 0.0;
    for (int i = 0; i < psi.axis.count(); ++i) {
      acc += std::polar(1.0, -p_axis[m] * psi.axis[i] / hbar) * psi.values(i);
    }
    out(m) = pref * acc;
  }
  return {p_axis, out, psi.ctx};
}

WignerGrid wigner_of_pure(const WaveFunctionGrid &psi, const AxisGrid &p_axis,
                          double *max_imag) {
  require_single_dof(psi.ctx, "wigner_of_pure");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument("wigner_of_pure: state is not normalized (norm " +
                                std::to_string(norm) + ")");
  }
  const double hbar = psi.ctx.hbar();
  const double dx = psi.axis.spacing();
  const double p_max = std::max(std::abs(p_axis.min()), std::abs(p_axis.max()));
  // y = 2 k dx is sampled at 2 dx; momenta beyond pi hbar / (2 dx) alias.
  if (p_max >= kPi * hbar / (2.0 * dx)) {
    throw std::invalid_argument(
        "wigner_of_pure: aliasing, p axis exceeds the sampling band " +
        std::to_string(kPi * hbar / (2.0 * dx)));
  }
  const int nx = psi.axis.count();
  const int np = p_axis.count();
  const int kmax = nx - 1;

  // phase(m, k) = exp(-2 i p_m k dx / hbar), k = 0..kmax
  ComplexMatrix phase(np, kmax + 1);
  for (int m = 0; m < np; ++m) {
    for (int k = 0; k <= kmax; ++k) {
      phase(m, k) = std::polar(1.0, -2.0 * p_axis[m] * k * dx / hbar);
    }
  }

  Matrix values(nx, np);
  double worst_imag = 0.0;
  const double pref = dx / (kPi * hbar);
  ComplexVector corr(kmax + 1);
  for (int i = 0; i < nx; ++i) {
    const int reach = std::min(i, nx - 1 - i);
    for (int m = 0; m < np; ++m) {
      cdouble acc = psi.values(i) * std::conj(psi.values(i));
      for (int k = 1; k <= reach; ++k) {
        const cdouble fwd = psi.values(i + k) * std::conj(psi.values(i - k));
        const cdouble bwd = psi.values(i - k) * std::conj(psi.values(i + k));
        acc += phase(m, k) * fwd + std::conj(phase(m, k)) * bwd;
      }
      values(i, m) = pref * acc.real();
      worst_imag = std::max(worst_imag, std::abs(pref * acc.imag()));
    }
  }
  if (max_imag != nullptr) *max_imag = worst_imag;
  return WignerGrid(psi.axis, p_axis, std::move(values), psi.ctx);
}

WignerGrid wigner_of_pure(const WaveFunctionGrid &psi, double *max_imag) {
  return wigner_of_pure(psi, psi.axis, max_imag);
}

WignerGrid fock_wigner(int n, const AxisGrid &x_axis, const AxisGrid &p_axis,
                       const PhaseSpaceContext &ctx) {
  require_single_dof(ctx, "fock_wigner");
  if (n < 0) throw std::invalid_argument("fock_wigner: n must be >= 0");
  const double hbar = ctx.hbar();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  Matrix values(x_axis.count(), p_axis.count());
  for (int i = 0; i < x_axis.count(); ++i) {
    for (int j = 0; j < p_axis.count(); ++j) {
      const double r2 = (x_axis[i] * x_axis[i] + p_axis[j] * p_axis[j]) / hbar;
      const double t = 2.0 * r2;
      double prev = 0.0;
      double lag = 1.0;
      for (int k = 0; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - t) * lag - k * prev) / (k + 1.0);
        prev = lag;
        lag = next;
      }
      values(i, j) = sign / (kPi * hbar) * std::exp(-r2) * lag;
    }
  }
  return WignerGrid(x_axis, p_axis, std::move(values), ctx);
}

WignerGrid wigner_gaussian(const PhaseSpacePoint &mean, const Matrix &sigma,
                           const AxisGrid &x_axis, const AxisGrid &p_axis,
                           const PhaseSpaceContext &ctx) {
  require_single_dof(ctx, "wigner_gaussian");
  if (mean.size() != 2 || sigma.rows() != 2 || sigma.cols() != 2) {
    throw std::invalid_argument("wigner_gaussian: expected a 2x2 covariance");
  }
  require_symmetric_pd(sigma, "wigner_gaussian");
  const Matrix inv = sigma.inverse();
  const double peak = 1.0 / (2.0 * kPi * std::sqrt(sigma.determinant()));
  Matrix values(x_axis.count(), p_axis.count());
  for (int i = 0; i < x_axis.count(); ++i) {
    const double dx = x_axis[i] - mean.coords()(0);
    for (int j = 0; j < p_axis.count(); ++j) {
      const double dp = p_axis[j] - mean.coords()(1);
      const double q =
          inv(0, 0) * dx * dx + 2.0 * inv(0, 1) * dx * dp + inv(1, 1) * dp * dp;
      values(i, j) = peak * std::exp(-0.5 * q);
    }
  }
  return WignerGrid(x_axis, p_axis, std::move(values), ctx);
}

WignerGrid mixture_wigner(const MixtureSpec &spec) {
  const auto &first = spec.components().front().grid;
  Matrix values = Matrix::Zero(first.values().rows(), first.values().cols());
  for (const auto &c : spec.components()) {
    if (!(c.grid.x_axis() == first.x_axis()) ||
        !(c.grid.p_axis() == first.p_axis()) || !(c.grid.ctx() == first.ctx())) {
      throw std::invalid_argument("mixture_wigner: component grids incompatible");
    }
    values += c.weight * c.grid.values();
  }
  return WignerGrid(first.x_axis(), first.p_axis(), std::move(values),
                    first.ctx());
}

double interpolate(const WignerGrid &w, double x, double p) {
  const auto &xa = w.x_axis();
  const auto &pa = w.p_axis();
  if (x < xa.min() || x > xa.max() || p < pa.min() || p > pa.max()) return 0.0;
  const double u = (x - xa.min()) / xa.spacing();
  const double v = (p - pa.min()) / pa.spacing();
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  double wx[4];
  double wp[4];
  for (int k = 0; k < 4; ++k) {
    wx[k] = keys_weight(u - (i0 - 1 + k));
    wp[k] = keys_weight(v - (j0 - 1 + k));
  }
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const int i = i0 - 1 + a;
    if (i < 0 || i >= xa.count() || wx[a] == 0.0) continue;
    double row = 0.0;
    for (int b = 0; b < 4; ++b) {
      const int j = j0 - 1 + b;
      if (j < 0 || j >= pa.count()) continue;
      row += wp[b] * w.values()(i, j);
    }
    acc += wx[a] * row;
  }
  return acc;
}

WignerGrid rescale(const WignerGrid &w, RescaleParameter lambda,
                   RescaleDiagnostics *diag) {
  const double lam = lambda.value();
  if (lam == 1.0) {
    if (diag != nullptr) *diag = {};
    return w;
  }
  const double factor = lam * lam;  // lambda^{2N}, N = 1
  Matrix values(w.x_axis().count(), w.p_axis().count());
  for (int i = 0; i < w.x_axis().count(); ++i) {
    for (int j = 0; j < w.p_axis().count(); ++j) {
      values(i, j) =
          factor * interpolate(w, lam * w.x_axis()[i], lam * w.p_axis()[j]);
    }
  }
  WignerGrid out(w.x_axis(), w.p_axis(), std::move(values), w.ctx());
  if (diag != nullptr) {
    diag->lost_mass = w.mass() - out.mass();
    diag->warning = std::abs(diag->lost_mass) > 1e-6;
  }
  return out;
}

double trace(const WignerGrid &w) { return w.values().sum() * w.cell_area(); }

Vector position_marginal(const WignerGrid &w) {
  return w.values().rowwise().sum() * w.p_axis().spacing();
}

SymplecticFourier::SymplecticFourier(const WignerGrid &w) : grid_(w) {
  const Matrix &v = w.values();
  const auto rows = v.rows();
  const auto cols = v.cols();
  double frame_max = 0.0;
  double frame_sum = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (i == 0 || j == 0 || i == rows - 1 || j == cols - 1) {
        frame_max = std::max(frame_max, std::abs(v(i, j)));
        frame_sum += std::abs(v(i, j));
      }
    }
  }
  const double peak = w.peak();
  boundary_ratio_ = peak > 0.0 ? frame_max / peak : 0.0;
  boundary_mass_ = frame_sum * w.cell_area();
}

double SymplecticFourier::max_abs_x() const {
  return kPi / grid_.p_axis().spacing();
}

double SymplecticFourier::max_abs_p() const {
  return kPi / grid_.x_axis().spacing();
}

std::complex<double> SymplecticFourier::operator()(
    const PhaseSpacePoint &z) const {
  if (z.size() != 2) {
    throw std::invalid_argument("symplectic_fourier: expected a 2-vector");
  }
  return (*this)(z.coords()(0), z.coords()(1));
}

std::complex<double> SymplecticFourier::operator()(double x, double p) const {
  if (std::abs(x) >= max_abs_x() || std::abs(p) >= max_abs_p()) {
    throw std::domain_error(
        "symplectic_fourier: point outside the grid sampling band");
  }
  const auto &xa = grid_.x_axis();
  const auto &pa = grid_.p_axis();
  // sigma(z, z') = p x' - p' x
  Vector b_re(pa.count());
  Vector b_im(pa.count());
  for (int m = 0; m < pa.count(); ++m) {
    b_re(m) = std::cos(x * pa[m]);
    b_im(m) = -std::sin(x * pa[m]);
  }
  const Vector wr = grid_.values() * b_re;
  const Vector wi = grid_.values() * b_im;
  cdouble acc = 0.0;
  for (int i = 0; i < xa.count(); ++i) {
    acc += std::polar(1.0, p * xa[i]) * cdouble(wr(i), wi(i));
  }
  return acc * grid_.cell_area();
}

KernelMatrix kernel_from_wigner(const WignerGrid &w) {
  const auto &xa = w.x_axis();
  const auto &pa = w.p_axis();
  const double hbar = w.ctx().hbar();
  const double dx = xa.spacing();
  const double dp = pa.spacing();
  const int m = (xa.count() + 1) / 2;  // even-index sub-lattice
  const double band = kPi * hbar / dp;
  if (band < 4.0 * dx) {
    throw std::invalid_argument(
        "kernel_from_wigner: p spacing too coarse for the x grid");
  }
  const AxisGrid axis(xa.min(), xa.min() + 2.0 * (m - 1) * dx, m);

  // phase(delta + m - 1, j) = exp(i p_j (2 delta dx) / hbar)
  ComplexMatrix phase(2 * m - 1, pa.count());
  for (int d = -(m - 1); d <= m - 1; ++d) {
    for (int j = 0; j < pa.count(); ++j) {
      phase(d + m - 1, j) = std::polar(1.0, pa[j] * 2.0 * d * dx / hbar);
    }
  }

  KernelMatrix k{axis, ComplexMatrix::Zero(m, m), w.ctx(), 0.0, 0};
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const int d = a - b;
      if (std::abs(2.0 * d * dx) > band) {
        ++k.truncated_entries;
        continue;
      }
      const auto row = w.values().row(a + b);
      cdouble acc = 0.0;
      for (int j = 0; j < pa.count(); ++j) acc += row(j) * phase(d + m - 1, j);
      k.values(a, b) = acc * dp;
    }
  }
  k.hermiticity_residual = (k.values - k.values.adjoint()).cwiseAbs().maxCoeff();
  return k;
}

OracleSpectrum operator_spectrum_oracle(const WignerGrid &w, double tolerance) {
  const KernelMatrix k = kernel_from_wigner(w);
  const ComplexMatrix h = 0.5 * (k.values + k.values.adjoint()) * k.axis.spacing();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const Vector ev = es.eigenvalues().reverse();
  OracleSpectrum out;
  out.eigenvalues = ev;
  out.min_eigenvalue = ev(ev.size() - 1);
  out.sum = ev.sum();
  out.tolerance = tolerance;
  out.positive = out.min_eigenvalue >= -tolerance;
  out.hermiticity_residual = k.hermiticity_residual;
  return out;
}

}  // namespace wigpos

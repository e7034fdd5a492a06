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


#include "wigpos/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wigpos {

namespace {

constexpr int kQuadraturePoints = 4001;
// exp(-40) ~ 4e-18 relative to the peak of the integrand.
constexpr double kTailExponent = 40.0;

struct Transform1d {
  Vector k0;
  Vector k2;
  double max_imag = 0.0;
};

// A_k(x) = (1 / 2 pi) Int u^k exp(-a^2 u^4) exp(-i u x) du for k = 0, 2,
// trapezoid on a symmetric u grid.
Transform1d transform_1d(double a, const AxisGrid &axis) {
  const double cut = std::pow(kTailExponent / (a * a), 0.25);
  const double du = 2.0 * cut / (kQuadraturePoints - 1);
  std::vector<double> u(kQuadraturePoints), g(kQuadraturePoints);
  for (int i = 0; i < kQuadraturePoints; ++i) {
    u[i] = -cut + i * du;
    const double w = (i == 0 || i == kQuadraturePoints - 1) ? 0.5 : 1.0;
    g[i] = w * std::exp(-a * a * std::pow(u[i], 4));
  }
  Transform1d out{Vector(axis.count()), Vector(axis.count()), 0.0};
  for (int j = 0; j < axis.count(); ++j) {
    const double x = axis[j];
    double c0 = 0.0, c2 = 0.0, s0 = 0.0, s2 = 0.0;
    for (int i = 0; i < kQuadraturePoints; ++i) {
      const double c = std::cos(u[i] * x) * g[i];
      const double s = std::sin(u[i] * x) * g[i];
      c0 += c;
      c2 += u[i] * u[i] * c;
      s0 += s;
      s2 += u[i] * u[i] * s;
    }
    const double scale = du / (2.0 * std::numbers::pi);
    out.k0(j) = c0 * scale;
    out.k2(j) = c2 * scale;
    out.max_imag = std::max({out.max_imag, std::abs(s0 * scale), std::abs(s2 * scale)});
  }
  return out;
}

}  // namespace

NarcowichOConnellParams::NarcowichOConnellParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("NarcowichOConnellParams: alpha and beta must be > 0");
  }
}

bool NarcowichOConnellParams::satisfies_uncertainty(const PhaseSpaceContext &ctx) const {
  return alpha_ * beta_ >= 0.25 * ctx.hbar() * ctx.hbar();
}

AxisGrid narcowich_oconnell_axis() { return AxisGrid::centered(32.0, 512); }

WignerGrid narcowich_oconnell_grid(const NarcowichOConnellParams &params,
                                   const AxisGrid &x_axis, const AxisGrid &p_axis,
                                   const PhaseSpaceContext &ctx, double *max_imag) {
  if (ctx.dof() != 1) throw std::invalid_argument("narcowich_oconnell_grid: N = 1 only");
  const double a = params.alpha();
  const double b = params.beta();
  // Samples with spacing d only see frequencies below pi / d.
  const double ux = std::numbers::pi / x_axis.spacing();
  const double up = std::numbers::pi / p_axis.spacing();
  if (std::exp(-a * a * std::pow(ux, 4)) > 1e-10 ||
      std::exp(-b * b * std::pow(up, 4)) > 1e-10) {
    throw std::runtime_error("narcowich_oconnell_grid: grid too coarse for the transform");
  }
  const Transform1d tx = transform_1d(a, x_axis);
  const Transform1d tp = transform_1d(b, p_axis);
  Matrix values(x_axis.count(), p_axis.count());
  for (int i = 0; i < x_axis.count(); ++i) {
    for (int j = 0; j < p_axis.count(); ++j) {
      values(i, j) = tx.k0(i) * tp.k0(j) - 0.5 * a * tx.k2(i) * tp.k0(j) -
                     0.5 * b * tx.k0(i) * tp.k2(j);
    }
  }
  const double peak = values.cwiseAbs().maxCoeff();
  double edge = 0.0;
  const int nx = x_axis.count(), np = p_axis.count();
  for (int i = 0; i < nx; ++i) {
    edge = std::max({edge, std::abs(values(i, 0)), std::abs(values(i, np - 1))});
  }
  for (int j = 0; j < np; ++j) {
    edge = std::max({edge, std::abs(values(0, j)), std::abs(values(nx - 1, j))});
  }
  if (edge > 1e-10 * peak) {
    throw std::runtime_error("narcowich_oconnell_grid: grid does not cover the tails");
  }
  if (max_imag) *max_imag = std::max(tx.max_imag, tp.max_imag);
  return WignerGrid(x_axis, p_axis, std::move(values), ctx);
}

MomentP4 moment_p4(const WignerGrid &w) {
  const int nx = w.x_axis().count(), np = w.p_axis().count();
  double sum = 0.0, total_abs = 0.0, frame_abs = 0.0;
  for (int i = 0; i < nx; ++i) {
    double row = 0.0;
    for (int j = 0; j < np; ++j) {
      const double p = w.p_axis()[j];
      const double v = p * p * p * p * w.values()(i, j);
      row += v;
      total_abs += std::abs(v);
      if (i == 0 || j == 0 || i == nx - 1 || j == np - 1) frame_abs += std::abs(v);
    }
    sum += row;
  }
  const double share = total_abs > 0.0 ? frame_abs / total_abs : 0.0;
  return {sum * w.cell_area(), share, share > 1e-6};
}

WignerGrid indicator_bump(double half_width, const AxisGrid &x_axis,
                          const AxisGrid &p_axis, const PhaseSpaceContext &ctx) {
  if (!(half_width > 0.0)) throw std::invalid_argument("indicator_bump: width must be > 0");
  Matrix values = Matrix::Zero(x_axis.count(), p_axis.count());
  long inside = 0;
  for (int i = 0; i < x_axis.count(); ++i) {
    for (int j = 0; j < p_axis.count(); ++j) {
      if (std::abs(x_axis[i]) <= half_width && std::abs(p_axis[j]) <= half_width) {
        values(i, j) = 1.0;
        ++inside;
      }
    }
  }
  if (inside == 0) throw std::invalid_argument("indicator_bump: box holds no grid point");
  values /= static_cast<double>(inside) * x_axis.spacing() * p_axis.spacing();
  return WignerGrid(x_axis, p_axis, std::move(values), ctx);
}

WaveFunctionGrid truncated_ground_state(double half_width, const AxisGrid &axis,
                                        const PhaseSpaceContext &ctx) {
  WaveFunctionGrid psi = fock_state(0, axis, ctx);
  for (int i = 0; i < axis.count(); ++i) {
    if (std::abs(axis[i]) > half_width) psi.values(i) = 0.0;
  }
  const double n = psi.norm();
  if (!(n > 0.0)) throw std::invalid_argument("truncated_ground_state: empty window");
  psi.values /= std::sqrt(n);
  return psi;
}

}  // namespace wigpos

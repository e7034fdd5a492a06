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

// Grid-sampled states for one degree of freedom.
//
// Conventions (hbar-scaled, Weyl normalization):
//
//   W(x, p)  = (1 / 2 pi hbar) Int exp(-i p y / hbar) K(x + y/2, x - y/2) dy
//   K(x, x') = Int W((x + x')/2, p) exp(i p (x - x') / hbar) dp
//   F psi(p) = (2 pi hbar)^{-1/2} Int exp(-i p x / hbar) psi(x) dx
//
// The symplectic Fourier transform is hbar-free:
//
//   F_sigma W(z) = Int exp(i sigma(z, z')) W(z') d^2 z'
//
// All integrals are evaluated as plain Riemann sums on uniform grids. For
// smooth, decaying integrands these converge spectrally, and the sums are
// evaluated in a fixed order so results are bit-reproducible.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wigpos/symplectic.hpp"

namespace wigpos {

/// Uniform axis: count points from min to max inclusive.
class AxisGrid {
 public:
  AxisGrid(double min, double max, int count);

  /// count points on [-half_extent, half_extent) with 0 at index count/2.
  static AxisGrid centered(double half_extent, int count);

  double min() const { return min_; }
  double max() const { return max_; }
  int count() const { return count_; }
  double spacing() const { return (max_ - min_) / (count_ - 1); }
  double operator[](int i) const { return min_ + i * spacing(); }

  bool operator==(const AxisGrid &) const = default;

 private:
  double min_;
  double max_;
  int count_;
};

/// Default axis: 256 points over [-8 sqrt(hbar), 8 sqrt(hbar)).
AxisGrid default_axis(const PhaseSpaceContext &ctx, int count = 256,
                      double half_extent_units = 8.0);

struct WaveFunctionGrid {
  AxisGrid axis;
  ComplexVector values;
  PhaseSpaceContext ctx;

  /// Riemann-sum norm Int |psi|^2 dx.
  double norm() const;
};

/// Real samples W(x_i, p_j); rows follow the x axis.
class WignerGrid {
 public:
  WignerGrid(AxisGrid x_axis, AxisGrid p_axis, Matrix values,
             PhaseSpaceContext ctx);

  const AxisGrid &x_axis() const { return x_axis_; }
  const AxisGrid &p_axis() const { return p_axis_; }
  const Matrix &values() const { return values_; }
  const PhaseSpaceContext &ctx() const { return ctx_; }
  double cell_area() const { return x_axis_.spacing() * p_axis_.spacing(); }
  /// Riemann-sum mass, recorded at construction.
  double mass() const { return mass_; }
  double peak() const { return values_.cwiseAbs().maxCoeff(); }

  /// Same samples interpreted under a different hbar.
  WignerGrid with_hbar(double hbar) const;
  WignerGrid scaled(double factor) const;

 private:
  AxisGrid x_axis_;
  AxisGrid p_axis_;
  Matrix values_;
  PhaseSpaceContext ctx_;
  double mass_;
};

/// Sampled operator kernel K(x_a, x_b) on a position axis.
struct KernelMatrix {
  AxisGrid axis;
  ComplexMatrix values;
  PhaseSpaceContext ctx;
  /// Max |K(x, x') - conj K(x', x)|.
  double hermiticity_residual = 0.0;
  /// Entries with |x - x'| beyond the p-sampling band, set to zero.
  long truncated_entries = 0;
};

struct MixtureComponent {
  double weight;
  WignerGrid grid;
};

/// Convex weights (sum 1 within 1e-12, all positive) over compatible grids.
class MixtureSpec {
 public:
  explicit MixtureSpec(std::vector<MixtureComponent> components);
  const std::vector<MixtureComponent> &components() const { return components_; }

 private:
  std::vector<MixtureComponent> components_;
};

class RescaleParameter {
 public:
  explicit RescaleParameter(double lambda);
  double value() const { return lambda_; }

 private:
  double lambda_;
};

/// n-th oscillator eigenfunction with variance hbar (2n+1)/2.
/// Throws std::invalid_argument when |psi_n| >= 1e-12 at either boundary.
WaveFunctionGrid fock_state(int n, const AxisGrid &axis,
                            const PhaseSpaceContext &ctx);

/// Normalized Gaussian exp(-s (x - x0)^2 / 2 hbar + i p0 x / hbar).
WaveFunctionGrid gaussian_state(double squeeze, double x0, double p0,
                                const AxisGrid &axis,
                                const PhaseSpaceContext &ctx);

/// Unitary hbar-scaled Fourier transform sampled on p_axis.
WaveFunctionGrid fourier_transform(const WaveFunctionGrid &psi,
                                   const AxisGrid &p_axis);

/// Wigner transform of a normalized pure state by direct quadrature.
/// The largest imaginary part discarded is written to max_imag if given.
WignerGrid wigner_of_pure(const WaveFunctionGrid &psi, const AxisGrid &p_axis,
                          double *max_imag = nullptr);
WignerGrid wigner_of_pure(const WaveFunctionGrid &psi,
                          double *max_imag = nullptr);

/// Closed-form Fock Wigner function (-1)^n / (pi hbar) e^{-r^2/hbar} L_n(2 r^2/hbar).
WignerGrid fock_wigner(int n, const AxisGrid &x_axis, const AxisGrid &p_axis,
                       const PhaseSpaceContext &ctx);

/// (2 pi)^{-N} det(Sigma)^{-1/2} exp(-(z - m)^T Sigma^{-1} (z - m) / 2).
WignerGrid wigner_gaussian(const PhaseSpacePoint &mean, const Matrix &sigma,
                           const AxisGrid &x_axis, const AxisGrid &p_axis,
                           const PhaseSpaceContext &ctx);

WignerGrid mixture_wigner(const MixtureSpec &spec);

struct RescaleDiagnostics {
  /// Input mass minus output mass; the part of lambda^2 W(lambda z) whose
  /// source point fell outside the input grid.
  double lost_mass = 0.0;
  bool warning = false;
};

/// W^lambda(z) = lambda^2 W(lambda z) by bicubic interpolation on the source
/// grid; source points outside the grid contribute zero.
WignerGrid rescale(const WignerGrid &w, RescaleParameter lambda,
                   RescaleDiagnostics *diag = nullptr);

/// Bicubic (Keys, a = -1/2) interpolation; zero outside the grid.
double interpolate(const WignerGrid &w, double x, double p);

double trace(const WignerGrid &w);

/// Int W dp as a function of x.
Vector position_marginal(const WignerGrid &w);

/// Evaluator for F_sigma W on a fixed grid.
class SymplecticFourier {
 public:
  explicit SymplecticFourier(const WignerGrid &w);

  /// Throws std::domain_error when z exceeds the grid's sampling band.
  std::complex<double> operator()(const PhaseSpacePoint &z) const;
  std::complex<double> operator()(double x, double p) const;

  /// Largest |W| on the outer frame of the grid relative to the peak.
  double boundary_ratio() const { return boundary_ratio_; }
  /// Mass carried by the outer frame cells.
  double boundary_mass() const { return boundary_mass_; }
  bool decay_warning() const { return boundary_ratio_ > 1e-10; }
  double max_abs_x() const;
  double max_abs_p() const;
  const WignerGrid &grid() const { return grid_; }

 private:
  WignerGrid grid_;
  double boundary_ratio_;
  double boundary_mass_;
};

/// Kernel on the even-index sub-lattice of the W x-axis (spacing 2 dx), so
/// every midpoint (x + x')/2 is a node of the W grid.
KernelMatrix kernel_from_wigner(const WignerGrid &w);

struct OracleSpectrum {
  /// Eigenvalues of K * spacing, descending.
  Vector eigenvalues;
  double min_eigenvalue;
  double sum;
  double tolerance;
  bool positive;
  double hermiticity_residual;
};

/// Brute-force positivity: diagonalize the reconstructed kernel.
OracleSpectrum operator_spectrum_oracle(const WignerGrid &w,
                                        double tolerance = 1e-6);

}  // namespace wigpos

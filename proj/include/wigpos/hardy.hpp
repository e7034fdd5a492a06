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

// Gaussian domination tests.
//
// Hardy: if |psi(x)| <= C exp(-a x^2 / 2 hbar) and |F psi(p)| <= C exp(-b p^2 /
// 2 hbar) then ab <= 1, with equality only for Gaussians.
//
// Phase space: if a density operator has W(z) <= C exp(-M z.z / hbar) then the
// largest symplectic eigenvalue of M is at most 1. A fitted bound with
// mu_1(M) > 1 therefore rules out every density operator.

#pragma once

#include <cstdint>
#include <string>

#include "wigpos/phase_space.hpp"

namespace wigpos {

enum class HardyVerdict { consistent, boundary, inconsistent };

std::string to_string(HardyVerdict v);

struct HardyOptions {
  /// C is capped at cap_factor * max |psi| (and likewise for F psi).
  double cap_factor = 1.0;
  /// Samples below floor * max are treated as zero.
  double noise_floor = 1e-10;
  /// |ab - 1| <= band is reported as boundary.
  double band = 0.05;
};

struct HardyPair {
  /// Decay rates; +infinity when nothing in the tail region constrains them.
  double a;
  double b;
  double c_psi;
  double c_fourier;
  double product;
  HardyVerdict verdict;
};

HardyPair hardy_fit(const WaveFunctionGrid &psi, const HardyOptions &options = {});

enum class DominationVerdict { compatible, boundary, not_a_wigner_distribution };

std::string to_string(DominationVerdict v);

struct DominationOptions {
  double c_max_factor = 10.0;
  /// Values at or below noise_floor * peak are treated as zero.
  double noise_floor = 0.0;
  int max_evaluations = 1500;
  double boundary_band = 0.02;
};

struct DominationCertificate {
  Matrix m;
  double c;
  double c_max;
  SymplecticSpectrum spectrum;
  double mu1;
  DominationVerdict verdict;
  int evaluations;
  bool converged;
  /// No positive sample constrains the bound; mu1 was capped.
  bool unbounded;
  /// Largest W(z) exp(M z.z / hbar) / C over the grid (<= 1 when dominated).
  double worst_ratio;
};

/// Maximizes mu_1(M) over W(z) <= C exp(-M z.z / hbar) on the grid with
/// C <= c_max_factor * max W.
DominationCertificate fit_dominating_gaussian(const WignerGrid &w,
                                              const DominationOptions &options = {});

DominationVerdict theorem1_verdict(double mu1, double band = 0.02);
DominationVerdict theorem1_verdict(const DominationCertificate &cert);

/// True when every grid point is dominated by the certificate.
bool verify_domination(const WignerGrid &w, const DominationCertificate &cert);

struct CompactSupport {
  bool flag;
  /// Index box holding every sample above threshold * peak.
  int x_lo, x_hi, p_lo, p_hi;
};

/// True when W vanishes (|W| <= threshold * peak) outside a box strictly
/// inside the grid.
CompactSupport compact_support_flag(const WignerGrid &w, double threshold = 0.0);

}  // namespace wigpos

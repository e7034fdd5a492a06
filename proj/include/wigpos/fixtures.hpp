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

// States with known verdicts.
//
// The Narcowich-O'Connell function is defined through its (hbar-free)
// Fourier transform
//
//   F(x', p') = (1 - alpha x'^2 / 2 - beta p'^2 / 2) exp(-(alpha^2 x'^4 + beta^2 p'^4))
//   W(x, p)   = (2 pi)^-2 Int exp(-i (x x' + p p')) F(x', p') dx' dp'.
//
// For alpha beta >= hbar^2 / 4 its covariance diag(alpha, beta) satisfies
// the uncertainty principle, yet Int p^4 W = F''''(0) in p' = -24 beta^2 < 0,
// so W is not a state. (The often quoted value -24 alpha^2 has the roles of
// alpha and beta swapped.)

#pragma once

#include "wigpos/phase_space.hpp"

namespace wigpos {

class NarcowichOConnellParams {
 public:
  NarcowichOConnellParams(double alpha, double beta);
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// alpha beta >= hbar^2 / 4.
  bool satisfies_uncertainty(const PhaseSpaceContext &ctx) const;

 private:
  double alpha_;
  double beta_;
};

/// 512 points on [-32, 32): the transform's tails need a wide, fine grid.
AxisGrid narcowich_oconnell_axis();

/// Throws std::runtime_error when the grid does not resolve W (boundary
/// values above 1e-10 of the peak, or F not negligible at the Nyquist edge).
WignerGrid narcowich_oconnell_grid(const NarcowichOConnellParams &params,
                                   const AxisGrid &x_axis, const AxisGrid &p_axis,
                                   const PhaseSpaceContext &ctx,
                                   double *max_imag = nullptr);

struct MomentP4 {
  double value;
  /// Share of Int p^4 |W| carried by the outer grid frame.
  double boundary_share;
  bool heavy_tail;
};

MomentP4 moment_p4(const WignerGrid &w);

/// Constant 1 / area on the box [-h, h]^2, zero elsewhere, unit grid mass.
WignerGrid indicator_bump(double half_width, const AxisGrid &x_axis,
                          const AxisGrid &p_axis, const PhaseSpaceContext &ctx);

/// Ground state cut to |x| <= half_width and renormalized.
WaveFunctionGrid truncated_ground_state(double half_width, const AxisGrid &axis,
                                        const PhaseSpaceContext &ctx);

}  // namespace wigpos

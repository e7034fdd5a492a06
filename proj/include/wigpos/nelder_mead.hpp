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

#include <functional>

#include "wigpos/symplectic.hpp"

namespace wigpos {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double f_tol = 1e-10;
  double x_tol = 1e-8;
  int max_evaluations = 2000;
};

struct NelderMeadResult {
  Vector x;
  double value;
  int evaluations;
  bool converged;
};

/// Minimizes f with the classic reflect / expand / contract / shrink simplex
/// (coefficients 1, 2, 1/2, 1/2). Deterministic.
NelderMeadResult nelder_mead(const std::function<double(const Vector &)> &f,
                             const Vector &start,
                             const NelderMeadOptions &options = {});

}  // namespace wigpos

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

// Finite-order KLM conditions. For points z_1..z_m the matrix
//
//   F_jk = exp((i hbar / 2) sigma(z_j, z_k)) F_sigma W(z_j - z_k)
//
// is positive semidefinite for every m whenever W is the Wigner function of
// a density operator. klm_check samples point sets and looks for a negative
// eigenvalue; finding none is not a proof of positivity.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wigpos/phase_space.hpp"

namespace wigpos {

enum class PointStrategy { random, lattice, user };

std::string to_string(PointStrategy s);

struct KLMPointSet {
  std::vector<PhaseSpacePoint> points;
  PointStrategy strategy = PointStrategy::user;
  std::uint64_t seed = 0;
};

struct KLMMatrix {
  ComplexMatrix entries;
  double hermiticity_residual;

  double min_eigenvalue() const;
};

/// phase_sign selects exp(+-(i hbar / 2) sigma); +1 is the printed form.
KLMMatrix klm_matrix(const SymplecticFourier &fsw, const KLMPointSet &points,
                     const PhaseSpaceContext &ctx, int phase_sign = +1);

struct KLMWitness {
  std::vector<PhaseSpacePoint> points;
  ComplexVector eigenvector;
  /// v^H F v at the time of detection.
  double value;
};

struct KLMOrderRecord {
  int order;
  int trials;
  double worst_min_eigenvalue;
  std::optional<KLMWitness> witness;
};

enum class KLMOutcome { no_violation_found, violation_certificate };

std::string to_string(KLMOutcome o);

struct KLMOptions {
  int max_order = 3;
  int trials_per_order = 200;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  int phase_sign = +1;
};

struct KLMReport {
  std::vector<KLMOrderRecord> orders;
  KLMOutcome outcome;
  KLMOptions options;
  double worst_min_eigenvalue;
  double max_hermiticity_residual;
  bool decay_warning;
  double boundary_mass;
};

KLMReport klm_check(const WignerGrid &w, const KLMOptions &options = {});

/// Recomputes v^H F v for a witness against a fresh KLM matrix.
double reevaluate_witness(const WignerGrid &w, const KLMWitness &witness,
                          int phase_sign = +1);

}  // namespace wigpos

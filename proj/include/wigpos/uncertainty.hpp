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

// Covariance extraction and the uncertainty criteria:
//
//   Robertson-Schroedinger, per coordinate pair
//     Var(x_j) Var(p_j) >= Cov(x_j, p_j)^2 + hbar^2 / 4
//     Var(x_j) Var(p_k) >= Cov(x_j, p_k)^2            (j != k)
//   Hermitian form
//     Sigma + (i hbar / 2) J >= 0
//   Symplectic spectrum
//     nu_min(Sigma) >= hbar / 2
//
// The last two are equivalent. The coordinate inequalities are necessary,
// and for one degree of freedom also sufficient.
//
// Margins within 1e-10 * ||Sigma|| (||Sigma||^2 for the quadratic
// Robertson-Schroedinger margins) of zero are reported as Verdict::boundary,
// which counts as passing.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wigpos/phase_space.hpp"
#include "wigpos/symplectic.hpp"

namespace wigpos {

enum class Verdict { pass, boundary, fail };

inline bool passes(Verdict v) { return v != Verdict::fail; }
std::string to_string(Verdict v);

constexpr double kBoundaryBand = 1e-10;

class CovarianceMatrix {
 public:
  CovarianceMatrix(Matrix sigma, PhaseSpaceContext ctx);
  CovarianceMatrix(Matrix sigma, Vector mean, PhaseSpaceContext ctx);

  const Matrix &sigma() const { return sigma_; }
  const Vector &mean() const { return mean_; }
  const PhaseSpaceContext &ctx() const { return ctx_; }
  /// Spectral norm.
  double norm() const;

  CovarianceMatrix with_hbar(double hbar) const;

 private:
  Matrix sigma_;
  Vector mean_;
  PhaseSpaceContext ctx_;
};

struct CovarianceDiagnostics {
  /// Share of the second moment Int |z|^2 |W| carried by the outer grid frame.
  double boundary_share = 0.0;
  bool heavy_tail = false;
};

CovarianceMatrix covariance_from_grid(const WignerGrid &w,
                                      CovarianceDiagnostics *diag = nullptr);

struct RsPairResult {
  int j;
  int k;
  double lhs;
  double rhs;
  double margin;
  Verdict verdict;
};

struct RsReport {
  std::vector<RsPairResult> pairs;
  Verdict verdict;
};

RsReport check_rs(const CovarianceMatrix &sigma);

struct PsdResult {
  Verdict verdict;
  double min_eigenvalue;
  double tolerance;
};

PsdResult check_quantum_psd(const CovarianceMatrix &sigma);

struct WilliamsonCriterion {
  Verdict verdict;
  double nu_min;
  double nu_max;
};

/// Uses the smallest symplectic eigenvalue; throws if Sigma is not PD.
WilliamsonCriterion check_williamson_criterion(const CovarianceMatrix &sigma);

CovarianceMatrix rescale_covariance(const CovarianceMatrix &sigma,
                                    RescaleParameter lambda);

struct LambdaStar {
  /// sqrt(2 nu_min / hbar); the largest lambda with Sigma / lambda^2 admissible.
  double value;
  /// Sigma itself fails the uncertainty principle (value < 1).
  bool input_failing;
};

LambdaStar lambda_star(const CovarianceMatrix &sigma);

struct UncertaintyReport {
  double hbar;
  RsReport rs;
  PsdResult psd;
  WilliamsonCriterion williamson;
  LambdaStar lambda_star;
  Verdict verdict;
};

UncertaintyReport uncertainty_report(const CovarianceMatrix &sigma);

/// The same numerical covariance checked against each hbar.
std::vector<UncertaintyReport> hbar_sweep(const WignerGrid &w,
                                          const std::vector<double> &hbars);

/// Randomized search for covariances that satisfy every coordinate
/// Robertson-Schroedinger inequality but violate Sigma + (i hbar/2) J >= 0.
struct RsGapSearch {
  int trials = 0;
  int rs_pass = 0;
  int counterexamples = 0;
  /// First counterexample found, if any (empty matrix otherwise).
  Matrix example;
};

RsGapSearch search_rs_gap(std::uint64_t seed, int trials, int dof, double hbar);

}  // namespace wigpos

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

// State specs and the end-to-end positivity report.
//
// A state spec is a JSON object with a "type" tag:
//
//   {"type": "gaussian", "mean": [x, p], "cov": [[a, b], [b, c]]}
//   {"type": "fock", "n": 1}
//   {"type": "mixture", "components": [{"weight": w, "state": {...}}, ...]}
//   {"type": "grid", "manifest": "path/to/grid.json"}
//   {"type": "narcowich-oconnell", "alpha": a, "beta": b}
//
// Optional keys on any spec: "hbar", "lambda" (rescale W(z) -> lambda^2
// W(lambda z)), "grid": {"n": count, "extent": half_width}.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wigpos/hardy.hpp"
#include "wigpos/klm.hpp"
#include "wigpos/phase_space.hpp"

namespace wigpos {

/// Malformed spec or missing input file.
inline constexpr const char *kVersion = "0.1.0";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridOverrides {
  std::optional<int> n;
  std::optional<double> extent;
};

struct StateSpec {
  std::string type;
  nlohmann::json raw;
  double hbar = 1.0;
  std::optional<double> lambda;
  GridOverrides grid;
  std::filesystem::path base_dir;
};

StateSpec parse_state_spec(const nlohmann::json &j,
                           const std::filesystem::path &base_dir = {});
StateSpec load_state_spec(const std::filesystem::path &path);

struct PreparedState {
  WignerGrid w;
  /// Wave function when the state is pure and known on a grid (Hardy fit).
  std::optional<WaveFunctionGrid> psi;
  std::optional<RescaleDiagnostics> rescale;
};

/// Command-line overrides win over values in the spec.
PreparedState prepare_state(const StateSpec &spec, const GridOverrides &overrides = {},
                            std::optional<double> hbar = std::nullopt);

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  int max_order = 3;
  int trials = 200;
  double klm_tolerance = 1e-6;
  double oracle_tolerance = 1e-6;
  double cmax_factor = 10.0;
  double domination_band = 0.02;
  bool run_klm = true;
  bool run_domination = true;
  bool run_oracle = true;
};

enum class Classification { consistent_with_state, proven_not_a_state, inconclusive };
std::string to_string(Classification c);

struct AnalysisResult {
  nlohmann::json report;
  Classification classification;
};

AnalysisResult analyze(const StateSpec &spec, const PreparedState &state,
                       const AnalyzeOptions &options = {});

/// Exit status for a classification: 2 for proven_not_a_state, else 0.
int exit_code(Classification c);

nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const nlohmann::json &j);

nlohmann::json to_json(const KLMReport &r);
nlohmann::json to_json(const DominationCertificate &c, const WignerGrid &w);
nlohmann::json to_json(const OracleSpectrum &o);
nlohmann::json to_json(const HardyPair &h);

/// Capacity, admissibility, section areas and a contained blob for B_M.
nlohmann::json capacity_report(const Matrix &m, const PhaseSpaceContext &ctx);

/// Per-lambda uncertainty verdicts of the rescaled covariance, optional
/// oracle on the rescaled grid, and the first lambda where (uc) fails.
nlohmann::json rescale_sweep(const PreparedState &state, const std::vector<double> &lambdas,
                             bool with_oracle, double oracle_tolerance);

/// Same samples read under each hbar.
nlohmann::json hbar_sweep_report(const PreparedState &state, const std::vector<double> &hbars,
                                 bool with_oracle, double oracle_tolerance);

/// Parses "a:b:step" (inclusive of b up to rounding).
std::vector<double> parse_range(const std::string &text);

}  // namespace wigpos

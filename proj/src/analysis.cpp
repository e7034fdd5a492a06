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


#include "wigpos/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wigpos/blobs.hpp"
#include "wigpos/fixtures.hpp"
#include "wigpos/grid_io.hpp"
#include "wigpos/uncertainty.hpp"

namespace wigpos {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {


// Higher levels do not fit a default grid.
constexpr int kMaxFockLevel = 60;

double number_at(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("state spec: '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

json vector_to_json(const Vector &v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json uncertainty_to_json(const UncertaintyReport &u) {
  json pairs = json::array();
  for (const auto &p : u.rs.pairs) {
    pairs.push_back({{"j", p.j},
                     {"k", p.k},
                     {"lhs", p.lhs},
                     {"rhs", p.rhs},
                     {"margin", p.margin},
                     {"verdict", to_string(p.verdict)}});
  }
  return {{"hbar", u.hbar},
          {"verdict", to_string(u.verdict)},
          {"rs", {{"verdict", to_string(u.rs.verdict)}, {"pairs", pairs}}},
          {"psd",
           {{"verdict", to_string(u.psd.verdict)},
            {"min_eigenvalue", u.psd.min_eigenvalue},
            {"tolerance", u.psd.tolerance}}},
          {"williamson",
           {{"verdict", to_string(u.williamson.verdict)},
            {"nu_min", u.williamson.nu_min},
            {"nu_max", u.williamson.nu_max}}},
          {"lambda_star",
           {{"value", u.lambda_star.value},
            {"input_failing", u.lambda_star.input_failing}}}};
}

AxisGrid build_axis(const StateSpec &spec, const GridOverrides &ov,
                    const PhaseSpaceContext &ctx) {
  const std::optional<int> n = ov.n ? ov.n : spec.grid.n;
  const std::optional<double> extent = ov.extent ? ov.extent : spec.grid.extent;
  const bool no = spec.type == "narcowich-oconnell";
  if (no && !n && !extent) return narcowich_oconnell_axis();
  const int count = n.value_or(no ? 512 : 256);
  const double half = extent.value_or((no ? 32.0 : 8.0) * std::sqrt(ctx.hbar()));
  if (count < 16 || count % 2 != 0) throw InputError("grid n must be even and >= 16");
  if (!(half > 0.0)) throw InputError("grid extent must be > 0");
  return AxisGrid::centered(half, count);
}

PreparedState build(const StateSpec &spec, const AxisGrid &axis,
                    const PhaseSpaceContext &ctx, std::optional<double> hbar_override) {
  const json &j = spec.raw;
  if (spec.type == "gaussian") {
    Vector mean = Vector::Zero(2);
    if (j.contains("mean")) {
      const auto m = j.at("mean");
      if (!m.is_array() || m.size() != 2) throw InputError("gaussian: mean must be [x, p]");
      mean << m[0].get<double>(), m[1].get<double>();
    }
    if (!j.contains("cov")) throw InputError("gaussian: 'cov' is required");
    const Matrix cov = matrix_from_json(j.at("cov"));
    if (cov.rows() != 2 || cov.cols() != 2) throw InputError("gaussian: cov must be 2x2");
    return {wigner_gaussian(PhaseSpacePoint(mean), cov, axis, axis, ctx), std::nullopt,
            std::nullopt};
  }
  if (spec.type == "fock") {
    if (!j.contains("n") || !j.at("n").is_number_integer()) {
      throw InputError("fock: 'n' must be an integer");
    }
    const int n = j.at("n").get<int>();
    if (n < 0 || n > kMaxFockLevel) throw InputError("fock: n out of range");
    std::optional<WaveFunctionGrid> psi;
    try {
      psi = fock_state(n, axis, ctx);
    } catch (const std::invalid_argument &) {
      // Wave function not resolved on this grid; only the Hardy fit needs it.
    }
    return {fock_wigner(n, axis, axis, ctx), psi, std::nullopt};
  }
  if (spec.type == "narcowich-oconnell") {
    const double half = 0.5 * ctx.hbar();
    const double alpha = j.contains("alpha") ? number_at(j, "alpha") : half;
    const double beta = j.contains("beta") ? number_at(j, "beta") : half;
    return {narcowich_oconnell_grid(NarcowichOConnellParams(alpha, beta), axis, axis, ctx),
            std::nullopt, std::nullopt};
  }
  if (spec.type == "grid") {
    if (!j.contains("manifest") || !j.at("manifest").is_string()) {
      throw InputError("grid: 'manifest' path is required");
    }
    fs::path p = j.at("manifest").get<std::string>();
    if (p.is_relative()) p = spec.base_dir / p;
    try {
      WignerGrid w = read_wigner_grid(p);
      if (hbar_override || spec.raw.contains("hbar")) w = w.with_hbar(ctx.hbar());
      return {w, std::nullopt, std::nullopt};
    } catch (const std::runtime_error &e) {
      throw InputError(e.what());
    } catch (const json::exception &e) {
      throw InputError(e.what());
    }
  }
  if (spec.type == "mixture") {
    if (!j.contains("components") || !j.at("components").is_array() ||
        j.at("components").empty()) {
      throw InputError("mixture: 'components' must be a non-empty array");
    }
    std::vector<MixtureComponent> parts;
    for (const auto &c : j.at("components")) {
      if (!c.contains("state")) throw InputError("mixture: component needs 'state'");
      StateSpec sub = parse_state_spec(c.at("state"), spec.base_dir);
      if (sub.type == "grid" || sub.type == "mixture") {
        throw InputError("mixture: components must be gaussian, fock or narcowich-oconnell");
      }
      PreparedState ps = build(sub, axis, ctx, hbar_override);
      if (sub.lambda) ps.w = rescale(ps.w, RescaleParameter(*sub.lambda));
      parts.push_back({number_at(c, "weight"), ps.w});
    }
    return {mixture_wigner(MixtureSpec(std::move(parts))), std::nullopt, std::nullopt};
  }
  throw InputError("state spec: unknown type '" + spec.type + "'");
}

json grid_summary(const WignerGrid &w) {
  return {{"x_axis", axis_to_json(w.x_axis())},
          {"p_axis", axis_to_json(w.p_axis())},
          {"hbar", w.ctx().hbar()}};
}

}  // namespace

json matrix_to_json(const Matrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json &j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  if (cols == 0) throw InputError("matrix must be a nested array");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json &row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError("matrix rows must have equal length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number()) {
        throw InputError("matrix entries must be numbers");
      }
      m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return m;
}

StateSpec parse_state_spec(const json &j, const fs::path &base_dir) {
  if (!j.is_object()) throw InputError("state spec must be a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) {
    throw InputError("state spec: 'type' is required");
  }
  StateSpec s;
  s.type = j.at("type").get<std::string>();
  s.raw = j;
  s.base_dir = base_dir;
  static const std::vector<std::string> known = {"gaussian", "fock", "mixture", "grid",
                                                 "narcowich-oconnell"};
  if (std::find(known.begin(), known.end(), s.type) == known.end()) {
    throw InputError("state spec: unknown type '" + s.type + "'");
  }
  if (j.contains("hbar")) {
    s.hbar = number_at(j, "hbar");
    if (!(s.hbar > 0.0)) throw InputError("state spec: hbar must be > 0");
  }
  if (j.contains("lambda")) {
    s.lambda = number_at(j, "lambda");
    if (!(*s.lambda > 0.0)) throw InputError("state spec: lambda must be > 0");
  }
  if (j.contains("grid") && s.type != "grid") {
    const json &g = j.at("grid");
    if (!g.is_object()) throw InputError("state spec: 'grid' must be an object");
    if (g.contains("n")) {
      if (!g.at("n").is_number_integer()) throw InputError("grid.n must be an integer");
      s.grid.n = g.at("n").get<int>();
    }
    if (g.contains("extent")) s.grid.extent = number_at(g, "extent");
  }
  return s;
}

StateSpec load_state_spec(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw InputError("state spec not found: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw InputError(std::string("state spec: ") + e.what());
  }
  return parse_state_spec(j, path.parent_path());
}

PreparedState prepare_state(const StateSpec &spec, const GridOverrides &overrides,
                            std::optional<double> hbar) {
  const double h = hbar.value_or(spec.hbar);
  if (!(h > 0.0)) throw InputError("hbar must be > 0");
  const PhaseSpaceContext ctx(1, h);
  try {
    const AxisGrid axis = build_axis(spec, overrides, ctx);
    PreparedState out = build(spec, axis, ctx, hbar);
    if (spec.lambda && *spec.lambda != 1.0) {
      RescaleDiagnostics diag;
      out.w = rescale(out.w, RescaleParameter(*spec.lambda), &diag);
      out.rescale = diag;
      out.psi.reset();
    }
    return out;
  } catch (const InputError &) {
    throw;
  } catch (const json::exception &e) {
    throw InputError(std::string("state spec: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw InputError(e.what());
  }
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::consistent_with_state:
      return "consistent_with_state";
    case Classification::proven_not_a_state:
      return "proven_not_a_state";
    case Classification::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

int exit_code(Classification c) { return c == Classification::proven_not_a_state ? 2 : 0; }

json to_json(const KLMReport &r) {
  json orders = json::array();
  json witness = nullptr;
  for (const auto &o : r.orders) {
    orders.push_back({{"order", o.order},
                      {"trials", o.trials},
                      {"worst_min_eigenvalue", o.worst_min_eigenvalue},
                      {"violation", o.witness.has_value()}});
    if (o.witness) {
      json pts = json::array();
      for (const auto &p : o.witness->points) pts.push_back(vector_to_json(p.coords()));
      json vec = json::array();
      for (Eigen::Index i = 0; i < o.witness->eigenvector.size(); ++i) {
        vec.push_back({o.witness->eigenvector(i).real(), o.witness->eigenvector(i).imag()});
      }
      witness = {{"order", o.order}, {"points", pts}, {"eigenvector", vec},
                 {"value", o.witness->value}};
    }
  }
  return {{"outcome", to_string(r.outcome)},
          {"max_order", r.options.max_order},
          {"trials_per_order", r.options.trials_per_order},
          {"seed", r.options.seed},
          {"tolerance", r.options.tolerance},
          {"phase_sign", r.options.phase_sign},
          {"worst_min_eigenvalue", r.worst_min_eigenvalue},
          {"max_hermiticity_residual", r.max_hermiticity_residual},
          {"decay_warning", r.decay_warning},
          {"boundary_mass", r.boundary_mass},
          {"orders", orders},
          {"witness", witness}};
}

json to_json(const DominationCertificate &c, const WignerGrid &w) {
  return {{"M", matrix_to_json(c.m)},
          {"C", c.c},
          {"c_max", c.c_max},
          {"spectrum", vector_to_json(c.spectrum.values())},
          {"mu1", c.mu1},
          {"verdict", to_string(c.verdict)},
          {"evaluations", c.evaluations},
          {"converged", c.converged},
          {"unbounded", c.unbounded},
          {"worst_ratio", c.worst_ratio},
          {"verified", verify_domination(w, c)}};
}

json to_json(const OracleSpectrum &o) {
  json head = json::array();
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(10, o.eigenvalues.size()); ++i) {
    head.push_back(o.eigenvalues(i));
  }
  return {{"head", head},
          {"min_eigenvalue", o.min_eigenvalue},
          {"sum", o.sum},
          {"tolerance", o.tolerance},
          {"positive", o.positive},
          {"hermiticity_residual", o.hermiticity_residual}};
}

json to_json(const HardyPair &h) {
  auto finite = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"a", finite(h.a)},
          {"b", finite(h.b)},
          {"c_psi", h.c_psi},
          {"c_fourier", h.c_fourier},
          {"product", finite(h.product)},
          {"verdict", to_string(h.verdict)}};
}

json capacity_report(const Matrix &m, const PhaseSpaceContext &ctx) {
  const EllipsoidSpec e(m, ctx);
  const auto spectrum = symplectic_spectrum(m);
  json areas = json::array();
  for (int j = 1; j <= ctx.dof(); ++j) areas.push_back(section_area(e, j));
  json blob = nullptr;
  const bool admissible = is_admissible(e);
  if (admissible) {
    const BlobSpec b = find_contained_blob(e);
    blob = {{"S", matrix_to_json(b.s)}, {"containment_residual", b.containment_residual}};
  }
  return {{"M", matrix_to_json(m)},
          {"hbar", ctx.hbar()},
          {"spectrum", vector_to_json(spectrum.values())},
          {"mu1", spectrum.max()},
          {"capacity", capacity(e)},
          {"half_planck", std::numbers::pi * ctx.hbar()},
          {"admissible", admissible},
          {"section_areas", areas},
          {"blob", blob}};
}

AnalysisResult analyze(const StateSpec &spec, const PreparedState &state,
                       const AnalyzeOptions &opt) {
  const WignerGrid &w = state.w;
  json report;
  json notes = json::array();
  json witnesses = json::array();
  report["tool"] = "wigpos";
  report["version"] = kVersion;
  report["command"] = "analyze";
  report["input"] = spec.raw;
  report["seed"] = opt.seed;
  report["options"] = {{"max_order", opt.max_order},
                       {"trials", opt.trials},
                       {"klm_tolerance", opt.klm_tolerance},
                       {"oracle_tolerance", opt.oracle_tolerance},
                       {"cmax_factor", opt.cmax_factor},
                       {"domination_band", opt.domination_band}};
  report["grid"] = grid_summary(w);
  report["rescale"] = state.rescale ? json{{"lambda", *spec.lambda},
                                           {"lost_mass", state.rescale->lost_mass},
                                           {"warning", state.rescale->warning}}
                                    : json(nullptr);

  const double tr = trace(w);
  report["trace"] = tr;
  if (std::abs(tr - 1.0) > 1e-3) notes.push_back("trace differs from 1 by more than 1e-3");

  CovarianceDiagnostics cdiag;
  std::optional<UncertaintyReport> unc;
  try {
    const CovarianceMatrix cov = covariance_from_grid(w, &cdiag);
    report["covariance"] = {{"sigma", matrix_to_json(cov.sigma())},
                            {"mean", vector_to_json(cov.mean())},
                            {"boundary_share", cdiag.boundary_share},
                            {"heavy_tail", cdiag.heavy_tail}};
    unc = uncertainty_report(cov);
    report["uncertainty"] = uncertainty_to_json(*unc);
    if (unc->psd.verdict == Verdict::fail) witnesses.push_back("uncertainty_violation");
  } catch (const std::invalid_argument &e) {
    report["covariance"] = nullptr;
    report["uncertainty"] = nullptr;
    notes.push_back(std::string("covariance unavailable: ") + e.what());
  }

  report["klm"] = nullptr;
  if (opt.run_klm) {
    if (std::abs(tr - 1.0) > 1e-3) {
      notes.push_back("klm skipped: trace is not 1");
    } else {
      KLMOptions ko;
      ko.max_order = opt.max_order;
      ko.trials_per_order = opt.trials;
      ko.seed = opt.seed;
      ko.tolerance = opt.klm_tolerance;
      const KLMReport kr = klm_check(w, ko);
      report["klm"] = to_json(kr);
      if (kr.outcome == KLMOutcome::violation_certificate) witnesses.push_back("klm_certificate");
    }
  }

  report["domination"] = nullptr;
  report["capacity"] = nullptr;
  if (opt.run_domination) {
    if (w.values().maxCoeff() > 0.0) {
      DominationOptions dop;
      dop.c_max_factor = opt.cmax_factor;
      dop.boundary_band = opt.domination_band;
      const DominationCertificate cert = fit_dominating_gaussian(w, dop);
      report["domination"] = to_json(cert, w);
      if (cert.verdict == DominationVerdict::not_a_wigner_distribution && !cert.unbounded) {
        witnesses.push_back("gaussian_domination");
      }
      try {
        report["capacity"] = capacity_report(cert.m, w.ctx());
      } catch (const std::exception &e) {
        notes.push_back(std::string("capacity unavailable: ") + e.what());
      }
    } else {
      notes.push_back("domination skipped: W has no positive part");
    }
  }

  const CompactSupport cs = compact_support_flag(w);
  report["compact_support"] = {{"flag", cs.flag},
                               {"x_lo", cs.x_lo},
                               {"x_hi", cs.x_hi},
                               {"p_lo", cs.p_lo},
                               {"p_hi", cs.p_hi}};

  const MomentP4 m4 = moment_p4(w);
  report["moment_p4"] = {{"value", m4.value},
                         {"boundary_share", m4.boundary_share},
                         {"heavy_tail", m4.heavy_tail}};
  // <p^4> is the expectation of a positive operator.
  if (m4.value < -1e-6 && !m4.heavy_tail) witnesses.push_back("negative_p4_moment");

  report["hardy"] = state.psi ? to_json(hardy_fit(*state.psi)) : json(nullptr);

  std::optional<OracleSpectrum> oracle;
  report["oracle"] = nullptr;
  if (opt.run_oracle) {
    oracle = operator_spectrum_oracle(w, opt.oracle_tolerance);
    report["oracle"] = to_json(*oracle);
    if (!oracle->positive) witnesses.push_back("oracle_negative_eigenvalue");
  }

  Classification cls = Classification::inconclusive;
  if (!witnesses.empty()) {
    cls = Classification::proven_not_a_state;
  } else if (oracle && oracle->positive && unc && passes(unc->verdict) &&
             std::abs(tr - 1.0) <= 1e-3) {
    cls = Classification::consistent_with_state;
  }
  report["witnesses"] = witnesses;
  report["notes"] = notes;
  report["classification"] = to_string(cls);
  return {report, cls};
}

json rescale_sweep(const PreparedState &state, const std::vector<double> &lambdas,
                   bool with_oracle, double oracle_tolerance) {
  const CovarianceMatrix base = covariance_from_grid(state.w);
  const LambdaStar star = lambda_star(base);
  json entries = json::array();
  json flip = nullptr;
  for (double lam : lambdas) {
    const RescaleParameter rp(lam);
    const UncertaintyReport u = uncertainty_report(rescale_covariance(base, rp));
    json e = {{"lambda", lam},
              {"psd_verdict", to_string(u.psd.verdict)},
              {"rs_verdict", to_string(u.rs.verdict)},
              {"nu_min", u.williamson.nu_min},
              {"psd_min_eigenvalue", u.psd.min_eigenvalue}};
    if (with_oracle) {
      e["oracle_min_eigenvalue"] =
          operator_spectrum_oracle(rescale(state.w, rp), oracle_tolerance).min_eigenvalue;
    }
    if (flip.is_null() && u.psd.verdict == Verdict::fail) flip = lam;
    entries.push_back(std::move(e));
  }
  return {{"tool", "wigpos"},
          {"version", kVersion},
          {"command", "rescale-sweep"},
          {"grid", grid_summary(state.w)},
          {"lambda_star", star.value},
          {"input_failing", star.input_failing},
          {"flip_lambda", flip},
          {"entries", entries}};
}

json hbar_sweep_report(const PreparedState &state, const std::vector<double> &hbars,
                       bool with_oracle, double oracle_tolerance) {
  const auto reports = hbar_sweep(state.w, hbars);
  json entries = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    json e = uncertainty_to_json(reports[i]);
    if (with_oracle) {
      const auto o = operator_spectrum_oracle(state.w.with_hbar(hbars[i]), oracle_tolerance);
      e["oracle_min_eigenvalue"] = o.min_eigenvalue;
      e["oracle_positive"] = o.positive;
    }
    entries.push_back(std::move(e));
  }
  return {{"tool", "wigpos"},
          {"version", kVersion},
          {"command", "hbar-sweep"},
          {"grid", grid_summary(state.w)},
          {"entries", entries}};
}

std::vector<double> parse_range(const std::string &text) {
  std::vector<double> out;
  auto to_double = [&](const std::string &s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception &) {
      throw InputError("bad number in range '" + text + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw InputError("range must be a:b:step");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || b < a) throw InputError("range needs step > 0 and b >= a");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000) throw InputError("range too long");
    for (long k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(item));
  }
  if (out.empty()) throw InputError("empty range");
  return out;
}

}  // namespace wigpos

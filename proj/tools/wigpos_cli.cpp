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


// wigpos: command-line front end. Every subcommand writes one JSON document
// to stdout or to the -o path.
//
// Exit status: 0 consistent or inconclusive, 2 proven not a state, 1 input
// error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wigpos/analysis.hpp"
#include "wigpos/grid_io.hpp"
#include "wigpos/hardy.hpp"
#include "wigpos/klm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wigpos;

namespace {

struct CommonFlags {
  std::string spec;
  std::optional<double> hbar;
  std::optional<int> grid_n;
  std::optional<double> grid_extent;
  std::string output;
  AnalyzeOptions analyze;
};

void add_state_flags(CLI::App *cmd, CommonFlags &f) {
  cmd->add_option("spec", f.spec, "State spec JSON file, or inline JSON object")->required();
  cmd->add_option("--hbar", f.hbar, "Override hbar");
  cmd->add_option("--grid-n", f.grid_n, "Grid points per axis");
  cmd->add_option("--grid-extent", f.grid_extent, "Grid half-width");
  cmd->add_option("-o,--output", f.output, "Write the report here instead of stdout");
}

void add_analysis_flags(CLI::App *cmd, CommonFlags &f) {
  AnalyzeOptions &a = f.analyze;
  cmd->add_option("--seed", a.seed, "KLM search seed");
  cmd->add_option("--max-order", a.max_order, "Largest KLM order");
  cmd->add_option("--trials", a.trials, "KLM trials per order");
  cmd->add_option("--cmax-factor", a.cmax_factor, "Domination cap C <= factor * max W");
  cmd->add_option("--tol-klm", a.klm_tolerance, "KLM eigenvalue tolerance");
  cmd->add_option("--tol-oracle", a.oracle_tolerance, "Oracle eigenvalue tolerance");
  cmd->add_option("--tol-band", a.domination_band, "Domination verdict band around mu1 = 1");
}

StateSpec read_spec(const std::string &arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') {
    try {
      return parse_state_spec(json::parse(arg), fs::current_path());
    } catch (const json::exception &e) {
      throw InputError(std::string("state spec: ") + e.what());
    }
  }
  return load_state_spec(arg);
}

PreparedState prepare(const CommonFlags &f, StateSpec &spec) {
  spec = read_spec(f.spec);
  return prepare_state(spec, GridOverrides{f.grid_n, f.grid_extent}, f.hbar);
}

// Writes through a temporary file so a partial report never appears at path.
void emit(const json &report, const std::string &path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write " + path);
    out << text;
  }
  fs::rename(tmp, target);
}

json header(const std::string &command, const StateSpec &spec, const PreparedState &st) {
  return {{"tool", "wigpos"},
          {"version", kVersion},
          {"command", command},
          {"input", spec.raw},
          {"grid",
           {{"x_axis", axis_to_json(st.w.x_axis())},
            {"p_axis", axis_to_json(st.w.p_axis())},
            {"hbar", st.w.ctx().hbar()}}}};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Positivity checks for candidate Wigner distributions"};
  app.require_subcommand(1);

  CommonFlags an, wg, rs, kl, dm, orc, hs;
  std::string csv_path, lambdas, hbars, matrix_text;
  double cap_hbar = 1.0;
  std::string cap_out;
  bool rs_oracle = false, hs_oracle = false;
  bool no_klm = false, no_oracle = false, no_dominate = false;

  auto *c_an = app.add_subcommand("analyze", "Run every check and classify the state");
  add_state_flags(c_an, an);
  add_analysis_flags(c_an, an);
  c_an->add_flag("--no-klm", no_klm, "Skip the KLM search");
  c_an->add_flag("--no-oracle", no_oracle, "Skip the operator spectrum oracle");
  c_an->add_flag("--no-dominate", no_dominate, "Skip the Gaussian domination fit");

  auto *c_wg = app.add_subcommand("wigner", "Write the Wigner grid (manifest + CSV)");
  add_state_flags(c_wg, wg);
  c_wg->add_option("--csv", csv_path, "CSV path (default: <output>.csv)");

  auto *c_rs = app.add_subcommand("rescale-sweep", "Uncertainty verdicts along W -> lambda^2 W(lambda z)");
  add_state_flags(c_rs, rs);
  c_rs->add_option("--lambdas", lambdas, "a:b:step or comma list")->required();
  c_rs->add_flag("--oracle", rs_oracle, "Also run the oracle on each rescaled grid");

  auto *c_kl = app.add_subcommand("klm", "Search for KLM violations");
  add_state_flags(c_kl, kl);
  add_analysis_flags(c_kl, kl);

  auto *c_dm = app.add_subcommand("dominate", "Fit the dominating Gaussian");
  add_state_flags(c_dm, dm);
  add_analysis_flags(c_dm, dm);

  auto *c_or = app.add_subcommand("oracle", "Diagonalize the reconstructed density matrix");
  add_state_flags(c_or, orc);
  add_analysis_flags(c_or, orc);

  auto *c_cap = app.add_subcommand("capacity", "Capacity and blobs of the ellipsoid M z.z <= hbar");
  c_cap->add_option("matrix", matrix_text, "Matrix as JSON nested array, or a file holding one")
      ->required();
  c_cap->add_option("--hbar", cap_hbar, "hbar");
  c_cap->add_option("-o,--output", cap_out, "Write the report here instead of stdout");

  auto *c_hs = app.add_subcommand("hbar-sweep", "Read the same grid under several hbar values");
  add_state_flags(c_hs, hs);
  c_hs->add_option("--hbars", hbars, "a:b:step or comma list")->required();
  c_hs->add_flag("--oracle", hs_oracle, "Also run the oracle at each hbar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    StateSpec spec;
    if (*c_an) {
      const PreparedState st = prepare(an, spec);
      AnalyzeOptions opt = an.analyze;
      opt.run_klm = !no_klm;
      opt.run_oracle = !no_oracle;
      opt.run_domination = !no_dominate;
      const AnalysisResult r = analyze(spec, st, opt);
      emit(r.report, an.output);
      return exit_code(r.classification);
    }
    if (*c_wg) {
      const PreparedState st = prepare(wg, spec);
      if (wg.output.empty() && csv_path.empty()) {
        json j = header("wigner", spec, st);
        j["manifest"] = grid_to_json(st.w);
        emit(j, "");
        return 0;
      }
      if (wg.output.empty()) throw InputError("wigner: --csv needs -o for the manifest");
      const std::string csv = csv_path.empty() ? wg.output + ".csv" : csv_path;
      write_wigner_grid(st.w, wg.output, csv);
      return 0;
    }
    if (*c_rs) {
      const PreparedState st = prepare(rs, spec);
      json j = rescale_sweep(st, parse_range(lambdas), rs_oracle, 1e-6);
      j["input"] = spec.raw;
      emit(j, rs.output);
      return 0;
    }
    if (*c_kl) {
      const PreparedState st = prepare(kl, spec);
      KLMOptions ko;
      ko.max_order = kl.analyze.max_order;
      ko.trials_per_order = kl.analyze.trials;
      ko.seed = kl.analyze.seed;
      ko.tolerance = kl.analyze.klm_tolerance;
      const KLMReport r = klm_check(st.w, ko);
      json j = header("klm", spec, st);
      j["klm"] = to_json(r);
      emit(j, kl.output);
      return r.outcome == KLMOutcome::violation_certificate ? 2 : 0;
    }
    if (*c_dm) {
      const PreparedState st = prepare(dm, spec);
      DominationOptions dop;
      dop.c_max_factor = dm.analyze.cmax_factor;
      dop.boundary_band = dm.analyze.domination_band;
      const DominationCertificate cert = fit_dominating_gaussian(st.w, dop);
      json j = header("dominate", spec, st);
      j["domination"] = to_json(cert, st.w);
      j["capacity"] = capacity_report(cert.m, st.w.ctx());
      const CompactSupport cs = compact_support_flag(st.w);
      j["compact_support"] = cs.flag;
      emit(j, dm.output);
      return cert.verdict == DominationVerdict::not_a_wigner_distribution && !cert.unbounded ? 2
                                                                                              : 0;
    }
    if (*c_or) {
      const PreparedState st = prepare(orc, spec);
      const OracleSpectrum o = operator_spectrum_oracle(st.w, orc.analyze.oracle_tolerance);
      json j = header("oracle", spec, st);
      j["oracle"] = to_json(o);
      emit(j, orc.output);
      return o.positive ? 0 : 2;
    }
    if (*c_cap) {
      json mj;
      const auto first = matrix_text.find_first_not_of(" \t\n");
      if (first != std::string::npos && matrix_text[first] == '[') {
        mj = json::parse(matrix_text);
      } else {
        std::ifstream in(matrix_text);
        if (!in) throw InputError("matrix file not found: " + matrix_text);
        in >> mj;
        if (mj.is_object() && mj.contains("M")) mj = mj.at("M");
      }
      const Matrix m = matrix_from_json(mj);
      if (m.rows() != m.cols() || m.rows() % 2 != 0) {
        throw InputError("capacity: matrix must be square with even size");
      }
      json j = capacity_report(m, PhaseSpaceContext(static_cast<int>(m.rows() / 2), cap_hbar));
      j["tool"] = "wigpos";
      j["version"] = kVersion;
      j["command"] = "capacity";
      emit(j, cap_out);
      return 0;
    }
    if (*c_hs) {
      const PreparedState st = prepare(hs, spec);
      json j = hbar_sweep_report(st, parse_range(hbars), hs_oracle, 1e-6);
      j["input"] = spec.raw;
      emit(j, hs.output);
      return 0;
    }
  } catch (const InputError &e) {
    std::cerr << "wigpos: " << e.what() << '\n';
    return 1;
  } catch (const json::exception &e) {
    std::cerr << "wigpos: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument &e) {
    std::cerr << "wigpos: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "wigpos: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

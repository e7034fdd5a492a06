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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wigpos/analysis.hpp"
#include "wigpos/grid_io.hpp"
#include "wigpos/uncertainty.hpp"

using namespace wigpos;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

AnalysisResult run(const json &j, AnalyzeOptions opt = {}) {
  const StateSpec spec = parse_state_spec(j);
  return analyze(spec, prepare_state(spec), opt);
}

bool has_witness(const json &report, const std::string &kind) {
  for (const auto &w : report.at("witnesses")) {
    if (w == kind) return true;
  }
  return false;
}

fs::path scratch_dir(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("wigpos_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("state spec parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_state_spec(json::array()), InputError);
  CHECK_THROWS_AS(parse_state_spec(json{{"n", 0}}), InputError);
  CHECK_THROWS_AS(parse_state_spec(json{{"type", "cat"}}), InputError);
  CHECK_THROWS_AS(parse_state_spec(json{{"type", "fock"}, {"hbar", -1.0}}), InputError);
  CHECK_THROWS_AS(parse_state_spec(json{{"type", "fock"}, {"lambda", 0.0}}), InputError);
  CHECK_THROWS_AS(prepare_state(parse_state_spec(json{{"type", "fock"}})), InputError);
  CHECK_THROWS_AS(prepare_state(parse_state_spec(json{{"type", "gaussian"}})), InputError);
  CHECK_THROWS_AS(
      prepare_state(parse_state_spec(json{{"type", "grid"}, {"manifest", "/nonexistent.json"}})),
      InputError);
  CHECK_THROWS_AS(prepare_state(parse_state_spec(json{{"type", "mixture"}, {"components", json::array()}})),
                  InputError);
}

TEST_CASE("state spec parsing reads overrides") {
  const auto s = parse_state_spec(
      json{{"type", "fock"}, {"n", 1}, {"hbar", 0.5}, {"lambda", 1.2}, {"grid", {{"n", 128}}}});
  CHECK(s.type == "fock");
  CHECK(s.hbar == 0.5);
  CHECK(s.lambda.value() == 1.2);
  CHECK(s.grid.n.value() == 128);
  CHECK_FALSE(s.grid.extent.has_value());
}

TEST_CASE("mixture specs combine component grids") {
  const json spec = {{"type", "mixture"},
                     {"components",
                      {{{"weight", 0.5}, {"state", {{"type", "fock"}, {"n", 0}}}},
                       {{"weight", 0.5}, {"state", {{"type", "fock"}, {"n", 1}}}}}}};
  const auto st = prepare_state(parse_state_spec(spec));
  CHECK(trace(st.w) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(st.psi.has_value());
  const auto c = covariance_from_grid(st.w);
  CHECK(c.sigma()(0, 0) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("grid manifests round-trip bit-exactly") {
  const PhaseSpaceContext ctx(1, 1.0);
  const AxisGrid a = AxisGrid::centered(6.0, 64);
  const WignerGrid w = fock_wigner(1, a, a, ctx);
  const fs::path dir = scratch_dir("roundtrip");
  write_wigner_grid(w, dir / "w.json", dir / "w.csv");
  const WignerGrid back = read_wigner_grid(dir / "w.json");
  CHECK(back.values() == w.values());
  CHECK(back.x_axis().min() == a.min());
  CHECK(back.x_axis().max() == a.max());
  CHECK(back.x_axis().count() == a.count());
  CHECK(back.ctx().hbar() == 1.0);

  // A grid spec pointing at the manifest loads the same values.
  const auto st = prepare_state(parse_state_spec(json{{"type", "grid"}, {"manifest", "w.json"}}, dir));
  CHECK(st.w.values() == w.values());
  fs::remove_all(dir);
}

TEST_CASE("grid manifest errors are reported") {
  const fs::path dir = scratch_dir("bad_manifest");
  std::ofstream(dir / "m.json") << R"({"x_axis": {"min": 0, "step": 1, "count": 2}})";
  CHECK_THROWS_AS(read_wigner_grid(dir / "m.json"), std::runtime_error);
  CHECK_THROWS_AS(read_wigner_grid(dir / "missing.json"), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("vacuum is consistent with a state") {
  const auto r = run(json{{"type", "fock"}, {"n", 0}});
  CHECK(r.classification == Classification::consistent_with_state);
  CHECK(exit_code(r.classification) == 0);
  CHECK(r.report.at("witnesses").empty());
  CHECK(r.report.at("uncertainty").at("psd").at("verdict") != "fail");
  CHECK(r.report.at("klm").at("witness").is_null());
  CHECK(r.report.at("klm").at("outcome") == "no_violation_found");
  CHECK(r.report.at("oracle").at("positive") == true);
}

TEST_CASE("rescaled first excited state is proven not a state while passing uncertainty") {
  const auto r = run(json{{"type", "fock"}, {"n", 1}, {"lambda", 1.2}});
  CHECK(r.classification == Classification::proven_not_a_state);
  CHECK(exit_code(r.classification) == 2);
  CHECK(r.report.at("uncertainty").at("rs").at("verdict") == "pass");
  CHECK(r.report.at("uncertainty").at("psd").at("verdict") == "pass");
  CHECK(has_witness(r.report, "oracle_negative_eigenvalue"));
  CHECK(r.report.at("oracle").at("min_eigenvalue").get<double>() <= -1e-3);
}

TEST_CASE("counterexample fixture is proven not a state by oracle and moment") {
  const auto r = run(json{{"type", "narcowich-oconnell"}});
  CHECK(r.classification == Classification::proven_not_a_state);
  CHECK(has_witness(r.report, "oracle_negative_eigenvalue"));
  CHECK(has_witness(r.report, "negative_p4_moment"));
  CHECK(r.report.at("moment_p4").at("value").get<double>() ==
        doctest::Approx(-6.0).epsilon(0.02));
}

TEST_CASE("disabling every hard check leaves a rescaled state inconclusive") {
  AnalyzeOptions opt;
  opt.run_klm = false;
  opt.run_domination = false;
  opt.run_oracle = false;
  const auto r = run(json{{"type", "fock"}, {"n", 1}, {"lambda", 1.2}}, opt);
  CHECK(r.classification == Classification::inconclusive);
  CHECK(exit_code(r.classification) == 0);
}

TEST_CASE("uncertainty failure alone is a witness") {
  AnalyzeOptions opt;
  opt.run_klm = false;
  opt.run_domination = false;
  opt.run_oracle = false;
  const auto r = run(json{{"type", "fock"}, {"n", 0}, {"lambda", 1.5}}, opt);
  CHECK(r.classification == Classification::proven_not_a_state);
  CHECK(has_witness(r.report, "uncertainty_violation"));
}

TEST_CASE("analysis is deterministic for a fixed seed") {
  AnalyzeOptions opt;
  opt.seed = 7;
  const json spec = {{"type", "fock"}, {"n", 0}, {"lambda", 1.5}};
  CHECK(run(spec, opt).report.dump() == run(spec, opt).report.dump());
}

TEST_CASE("parse_range") {
  CHECK(parse_range("0.5:1:0.25") == std::vector<double>{0.5, 0.75, 1.0});
  CHECK(parse_range("1,1.5,2") == std::vector<double>{1.0, 1.5, 2.0});
  CHECK_THROWS_AS(parse_range("1:0:0.1"), InputError);
  CHECK_THROWS_AS(parse_range("1:2"), InputError);
  CHECK_THROWS_AS(parse_range("a,b"), InputError);
  CHECK_THROWS_AS(parse_range("0:1:0"), InputError);
}

TEST_CASE("rescale sweep flips at the predicted threshold") {
  const auto st = prepare_state(parse_state_spec(json{{"type", "fock"}, {"n", 1}}));
  const auto rep = rescale_sweep(st, parse_range("1.5:2:0.05"), false, 1e-6);
  const double star = rep.at("lambda_star").get<double>();
  CHECK(star == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
  const double flip = rep.at("flip_lambda").get<double>();
  CHECK(flip > star);
  CHECK(flip - star <= 0.05 + 1e-12);
  for (const auto &e : rep.at("entries")) {
    CHECK((e.at("psd_verdict") == "fail") == (e.at("lambda").get<double>() > star + 1e-9));
  }
}

TEST_CASE("capacity report") {
  const PhaseSpaceContext ctx(1, 1.0);
  const auto rep = capacity_report(Matrix::Identity(2, 2), ctx);
  CHECK(rep.at("capacity").get<double>() == doctest::Approx(M_PI));
  CHECK(rep.at("admissible") == true);
  CHECK(matrix_from_json(matrix_to_json(Matrix::Identity(2, 2))) == Matrix::Identity(2, 2));
  CHECK_THROWS_AS(matrix_from_json(json{{1, 2}, {3}}), InputError);
}

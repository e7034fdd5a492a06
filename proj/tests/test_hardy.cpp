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
#include <limits>

#include "wigpos/fixtures.hpp"
#include "wigpos/hardy.hpp"
#include "wigpos/uncertainty.hpp"

using namespace wigpos;

namespace {

const PhaseSpaceContext kCtx(1, 1.0);

AxisGrid axis() { return default_axis(kCtx); }

// Wide enough that an s = 0.5 squeeze decays below the noise floor.
AxisGrid wide_axis() { return default_axis(kCtx, 256, 10.0); }

// Best isotropic bound W <= C_max exp(-mu |z|^2 / hbar) over the grid, by
// direct enumeration. The fitted mu_1 can only improve on it.
double isotropic_rate(const WignerGrid &w, double cmax_factor) {
  const double log_cmax = std::log(cmax_factor * w.values().maxCoeff());
  double mu = std::numeric_limits<double>::infinity();
  for (int i = 0; i < w.x_axis().count(); ++i) {
    for (int j = 0; j < w.p_axis().count(); ++j) {
      const double v = w.values()(i, j);
      const double r2 = w.x_axis()[i] * w.x_axis()[i] + w.p_axis()[j] * w.p_axis()[j];
      if (v <= 0.0 || r2 == 0.0) continue;
      mu = std::min(mu, (log_cmax - std::log(v)) * w.ctx().hbar() / r2);
    }
  }
  return mu;
}

}  // namespace

TEST_CASE("Hardy fit of the ground state sits on the boundary") {
  const auto h = hardy_fit(fock_state(0, axis(), kCtx));
  CHECK(h.a == doctest::Approx(1.0).epsilon(0.02));
  CHECK(h.b == doctest::Approx(1.0).epsilon(0.02));
  CHECK(h.verdict == HardyVerdict::boundary);
}

TEST_CASE("Hardy fit of squeezed Gaussians") {
  const auto h = hardy_fit(gaussian_state(2.0, 0.0, 0.0, axis(), kCtx));
  CHECK(h.a == doctest::Approx(2.0).epsilon(0.02));
  CHECK(h.b == doctest::Approx(0.5).epsilon(0.02));
  CHECK(h.product == doctest::Approx(1.0).epsilon(0.02));
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    const auto g = hardy_fit(gaussian_state(s, 0.0, 0.0, wide_axis(), kCtx));
    CHECK(g.product >= 0.95);
    CHECK(g.product <= 1.05);
  }
}

TEST_CASE("Hardy bounds dominate the Gaussian samples") {
  const auto psi = gaussian_state(2.0, 0.0, 0.0, axis(), kCtx);
  const auto h = hardy_fit(psi);
  const auto phi = fourier_transform(psi, psi.axis);
  for (int i = 0; i < psi.axis.count(); ++i) {
    const double x = psi.axis[i];
    CHECK(std::abs(psi.values(i)) <= h.c_psi * std::exp(-h.a * x * x / 2.0) * (1 + 1e-12));
    CHECK(std::abs(phi.values(i)) <= h.c_fourier * std::exp(-h.b * x * x / 2.0) * (1 + 1e-9));
  }
}

TEST_CASE("Hardy fit of a hard-truncated bump is inconsistent") {
  const auto h = hardy_fit(truncated_ground_state(1.0, axis(), kCtx));
  CHECK(h.verdict == HardyVerdict::inconsistent);
  CHECK(h.product > 1.0);
}

TEST_CASE("Hardy fit of the first excited state leaves a gap") {
  const auto h = hardy_fit(fock_state(1, axis(), kCtx));
  CHECK(h.product < 0.95);
  CHECK(h.verdict == HardyVerdict::consistent);
}

TEST_CASE("Hardy fit rejects zero input") {
  WaveFunctionGrid z{axis(), ComplexVector::Zero(256), kCtx};
  CHECK_THROWS_AS(hardy_fit(z), std::invalid_argument);
}

TEST_CASE("theorem1_verdict thresholds") {
  CHECK(theorem1_verdict(0.8) == DominationVerdict::compatible);
  CHECK(theorem1_verdict(1.0) == DominationVerdict::boundary);
  CHECK(theorem1_verdict(2.25) == DominationVerdict::not_a_wigner_distribution);
  CHECK(theorem1_verdict(1.019) == DominationVerdict::boundary);
  CHECK(theorem1_verdict(1.021) == DominationVerdict::not_a_wigner_distribution);
  CHECK(theorem1_verdict(0.979) == DominationVerdict::compatible);
}

TEST_CASE("vacuum is its own tight Gaussian bound") {
  const auto w = fock_wigner(0, axis(), axis(), kCtx);
  const auto cert = fit_dominating_gaussian(w);
  CHECK(cert.mu1 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(cert.mu1 >= isotropic_rate(w, 10.0) - 1e-9);
  CHECK(cert.mu1 - isotropic_rate(w, 10.0) < 1e-3);
  CHECK(cert.verdict == DominationVerdict::boundary);
  CHECK(verify_domination(w, cert));
  CHECK(cert.worst_ratio <= 1.0);
  CHECK(cert.c <= cert.c_max);
  CHECK(cert.mu1 == cert.spectrum.max());
}

TEST_CASE("first excited state has a strict domination gap") {
  const auto w = fock_wigner(1, axis(), axis(), kCtx);
  const auto cert = fit_dominating_gaussian(w);
  const double iso = isotropic_rate(w, 10.0);
  CHECK(cert.mu1 < 1.0);
  CHECK(cert.mu1 >= iso - 1e-9);
  CHECK(cert.mu1 == doctest::Approx(iso).epsilon(0.02));
  CHECK(cert.verdict == DominationVerdict::compatible);
  CHECK(verify_domination(w, cert));
}

TEST_CASE("rescaled vacuum fits scale with lambda squared") {
  const auto w = fock_wigner(0, axis(), axis(), kCtx);
  const double mu = fit_dominating_gaussian(w).mu1;
  for (double lam : {1.25, 1.5, 2.0}) {
    const auto r = rescale(w, RescaleParameter(lam));
    const auto cert = fit_dominating_gaussian(r);
    CHECK(cert.mu1 == doctest::Approx(lam * lam).epsilon(0.05));
    CHECK(cert.mu1 == doctest::Approx(lam * lam * mu).epsilon(0.05));
    CHECK(cert.verdict == DominationVerdict::not_a_wigner_distribution);
    CHECK(verify_domination(r, cert));
  }
}

TEST_CASE("Gaussian fits recover the covariance") {
  Matrix sigma(2, 2);
  sigma << 0.9, 0.35, 0.35, 0.7;
  const auto w = wigner_gaussian(PhaseSpacePoint(0, 0), sigma, wide_axis(), wide_axis(), kCtx);
  const auto cert = fit_dominating_gaussian(w);
  const Matrix implied = 0.5 * cert.m.inverse();
  CHECK((implied - sigma).norm() / sigma.norm() < 0.05);
  CHECK(verify_domination(w, cert));
}

TEST_CASE("domination verification catches a tampered certificate") {
  const auto w = fock_wigner(0, axis(), axis(), kCtx);
  auto cert = fit_dominating_gaussian(w);
  cert.c *= 0.999;
  CHECK_FALSE(verify_domination(w, cert));
}

TEST_CASE("domination fit input validation") {
  const auto w = fock_wigner(0, axis(), axis(), kCtx);
  DominationOptions opt;
  opt.c_max_factor = 0.5;
  CHECK_THROWS_AS(fit_dominating_gaussian(w, opt), std::invalid_argument);
  CHECK_THROWS_AS(fit_dominating_gaussian(w.scaled(-1.0)), std::invalid_argument);
}

TEST_CASE("compact support flag") {
  CHECK_FALSE(compact_support_flag(fock_wigner(0, axis(), axis(), kCtx)).flag);
  CHECK_FALSE(compact_support_flag(fock_wigner(1, axis(), axis(), kCtx)).flag);
  const auto bump = indicator_bump(1.0, axis(), axis(), kCtx);
  const auto cs = compact_support_flag(bump);
  CHECK(cs.flag);
  CHECK(axis()[cs.x_lo] == doctest::Approx(-1.0));
  CHECK(axis()[cs.x_hi] == doctest::Approx(1.0));
}

TEST_CASE("compactly supported bump admits a dominating Gaussian with mu_1 > 1") {
  const auto bump = indicator_bump(1.0, axis(), axis(), kCtx);
  const auto cert = fit_dominating_gaussian(bump);
  CHECK(cert.mu1 > 1.0);
  CHECK(cert.verdict == DominationVerdict::not_a_wigner_distribution);
  CHECK(verify_domination(bump, cert));
}

// Copyright 2026 The noisydk Authors
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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "noisydk/analytic.hpp"
#include "noisydk/ledger.hpp"
#include "noisydk/propagator.hpp"

using namespace noisydk;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;
const DKParams kFig2{4.0, 5.0, pi / 2, 1.0};

double oracle_constant(const DKParams& p) {
  return survival_numeric(p, CouplingProfile::constant(p.j)).q;
}

double oracle_flip(const DKParams& p, double t0) {
  return survival_numeric(p, CouplingProfile::single_flip(p.j, t0)).q;
}

}  // namespace

TEST_CASE("noise-free survival matches the ODE oracle") {
  for (double d0 : {0.0, 1.0, 4.0})
    for (double d1 : {0.5, 2.0, 5.0, 7.5})
      for (double j : {0.3, pi / 2, 3.0}) {
        const DKParams p{d0, d1, j, 1.0};
        const SurvivalResult r = survival_noise_free(p);
        CHECK(r.provenance == Provenance::analytic_validated);
        CHECK_THAT(r.q, WithinAbs(oracle_constant(p), 1e-6));
      }
}

TEST_CASE("noise-free survival with a non-unit pulse period") {
  const DKParams p{0.8, 1.6, 0.9, 1.7};
  CHECK_THAT(survival_noise_free(p).q, WithinAbs(oracle_constant(p), 1e-6));
}

TEST_CASE("validated forms give Q = 1 at zero coupling") {
  for (double d0 : {0.0, 2.0, 4.0})
    for (double d1 : {0.5, 3.0, 8.0}) {
      const DKParams p{d0, d1, 0.0, 1.0};
      CHECK(survival_noise_free(p).q == 1.0);
      CHECK(survival_telegraph_single_flip(p, 0.3).q == 1.0);
      CHECK(survival_gaussian(p, -0.5).q == 1.0);
    }
  CHECK(survival_ae({0.0, 3.0, 0.0, 1.0}).validated.q == 1.0);
  CHECK(survival_rz({2.0, 0.0, 0.0, 1.0}).validated.q == 1.0);
}

TEST_CASE("printed forms miss the zero-coupling limit") {
  CHECK(std::abs(survival_noise_free({4.0, 5.0, 0.0, 1.0}, Variant::as_printed).q - 1.0) > 0.5);
  CHECK(survival_ae({0.0, 3.0, 0.0, 1.0}).discrepancy() > 0.5);
  CHECK(survival_rz({2.0, 0.0, 0.0, 1.0}).discrepancy() > 0.5);
  CHECK(survival_gaussian({4.0, 3.0, 0.0, 1.0}, 0.0, Variant::as_printed).q < 0.5);
}

TEST_CASE("Allen-Eberly and Rosen-Zener special cases") {
  for (double x : {0.5, 2.0, 4.0})
    for (double j : {0.4, 1.0, 2.5}) {
      const DKParams ae{0.0, x, j, 1.0}, rz{x, 0.0, j, 1.0};
      CHECK_THAT(survival_ae(ae).validated.q, WithinAbs(oracle_constant(ae), 1e-6));
      CHECK_THAT(survival_ae(ae).validated.q, WithinAbs(survival_noise_free(ae).q, 1e-12));
      CHECK_THAT(survival_rz(rz).validated.q, WithinAbs(oracle_constant(rz), 1e-6));
    }
  CHECK_THROWS_AS(survival_ae({1.0, 2.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(survival_rz({1.0, 2.0, 1.0, 1.0}), DomainError);
  // pi pulse: Q_RZ = 0 at J T = 1/2 on resonance
  CHECK_THAT(survival_rz({0.0, 0.0, 0.5, 1.0}).validated.q, WithinAbs(0.0, 1e-15));
}

TEST_CASE("as-printed values are reported verbatim") {
  const SurvivalResult r = survival_noise_free({4.0, 5.0, 0.0, 1.0}, Variant::as_printed);
  CHECK(r.provenance == Provenance::analytic_as_printed);
  CHECK(r.q > 1.0);
}

TEST_CASE("survival stays in [0, 1] for large detunings") {
  for (double d : {20.0, 80.0, 300.0}) {
    const double q = survival_noise_free({d, d + 1.0, 2.0, 1.0}).q;
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
  }
}

TEST_CASE("pre-flip wavefunction matches the ODE state") {
  const DKParams p = kFig2;
  for (double t : {-3.0, -0.5, 0.0, 1.5}) {
    const AmplitudePair ode = propagate(p, CouplingProfile::constant(p.j), -25.0, t, {});
    const AmplitudePair an = wavefunction_pre_switch(p, t);
    // drop the common phase
    CHECK_THAT(std::abs(an.c1), WithinAbs(std::abs(ode.c1), 1e-7));
    CHECK(std::abs(an.c2 * std::conj(an.c1) - ode.c2 * std::conj(ode.c1)) < 1e-7);
  }
}

TEST_CASE("matched coefficients make the state continuous at the flip") {
  const DKParams p = kFig2;
  for (double t0 = -4.0; t0 <= 4.0; t0 += 0.5) {
    const MatchedCoefficients mc = matched_coefficients(p, t0);
    const PostSwitchBasis b = post_switch_basis(p, t0);
    const AmplitudePair pre = wavefunction_pre_switch(p, t0);
    CHECK(std::abs(mc.a_coef * b.first.c1 + mc.b_coef * b.second.c1 - pre.c1) < 1e-9);
    CHECK(std::abs(mc.a_coef * b.first.c2 + mc.b_coef * b.second.c2 - pre.c2) < 1e-9);
  }
}

TEST_CASE("matched coefficients tend to (1, 0) for an early flip") {
  // B is proportional to the pre-flip C2(t0), which decays like e^{t0/T}
  const double ratio = std::abs(matched_coefficients(kFig2, -10.0).b_coef) /
                       std::abs(wavefunction_pre_switch(kFig2, -10.0).c2);
  for (double t0 : {-14.0, -18.0}) {
    const double b = std::abs(matched_coefficients(kFig2, t0).b_coef);
    CHECK_THAT(b / std::abs(wavefunction_pre_switch(kFig2, t0).c2),
               WithinAbs(ratio, 1e-6 * ratio));
  }
  const MatchedCoefficients early = matched_coefficients(kFig2, -20.0);
  CHECK(std::abs(early.a_coef - 1.0) < 1e-12);
  CHECK(std::abs(early.b_coef) < 1e-8);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(matched_coefficients(kFig2, inf).a_coef == 1.0);
  CHECK(matched_coefficients(kFig2, -inf).b_coef == 0.0);
}

TEST_CASE("single-flip survival matches the piecewise ODE oracle") {
  for (double d0 : {0.0, 4.0})
    for (double d1 : {1.0, 5.0})
      for (double j : {0.5, pi / 2})
        for (double t0 : {-2.0, 0.0, 2.0}) {
          const DKParams p{d0, d1, j, 1.0};
          CHECK_THAT(survival_telegraph_single_flip(p, t0).q,
                     WithinAbs(oracle_flip(p, t0), 1e-6));
        }
}

TEST_CASE("late flip returns to the noise-free value") {
  const double q = survival_telegraph_single_flip(kFig2, 15.0).q;
  CHECK_THAT(q, WithinAbs(survival_noise_free(kFig2).q, 1e-6));
}

TEST_CASE("single-flip survival is symmetric in t0 when D0 = 0") {
  const DKParams p{0.0, 5.0, pi / 2, 1.0};
  for (double t0 : {0.3, 1.0, 2.5}) {
    CHECK_THAT(survival_telegraph_single_flip(p, t0).q,
               WithinAbs(survival_telegraph_single_flip(p, -t0).q, 1e-8));
  }
}

TEST_CASE("printed telegraph expression disagrees with the oracle") {
  const double want = oracle_flip(kFig2, 0.0);
  for (CrossTermReading r : {CrossTermReading::literal, CrossTermReading::uniform_minus})
    CHECK(std::abs(survival_telegraph_single_flip(kFig2, 0.0, Variant::as_printed, r).q -
                   want) > 0.1);
}

TEST_CASE("Gaussian-form survival matches the adiabatic-label oracle") {
  for (double d1 : {3.0, 4.0, 5.0, 6.0})
    for (double j : {0.5, 1.0, 2.0})
      for (double t0 : {-1.0, 0.0, 1.0}) {
        const DKParams p{4.0, d1, j, 1.0};
        CHECK_THAT(survival_gaussian(p, t0).q,
                   WithinAbs(survival_numeric_gaussian(p, t0).same_level, 1e-6));
      }
}

TEST_CASE("Gaussian-form mapping: printed P is Q where the rotated levels cross") {
  const DKParams crossing{4.0, 5.0, 1.0, 1.0};
  CHECK(survival_gaussian(crossing, 0.3).q ==
        survival_gaussian(crossing, 0.3, Variant::as_printed).q);
  const DKParams apart{4.0, 3.0, 0.5, 1.0};
  const TransformedParams tp = transformed_params(apart, 0.0);
  REQUIRE_FALSE(rotated_levels_cross(tp));
  CHECK_THAT(survival_gaussian(apart, 0.0).q,
             WithinAbs(1.0 - survival_gaussian(apart, 0.0, Variant::as_printed).q, 1e-15));
}

TEST_CASE("Gaussian-form label switch times are where the labels swap") {
  const DKParams p{4.0, 3.0, 1.0, 1.0};
  for (double ts : gaussian_label_switch_times(p)) {
    const bool before = rotated_levels_cross(transformed_params(p, ts - 1e-6));
    const bool after = rotated_levels_cross(transformed_params(p, ts + 1e-6));
    CHECK(before != after);
  }
}

TEST_CASE("Gaussian-form needs a chirp") {
  CHECK_THROWS_AS(survival_gaussian({4.0, 0.0, 1.0, 1.0}, 0.0), SingularTransformError);
}

TEST_CASE("discrepancy ledger covers the zero-coupling failures") {
  std::set<std::string> ids;
  for (const DiscrepancyEntry& e : discrepancy_ledger()) {
    ids.insert(e.id);
    CHECK(e.deviation == std::abs(e.printed - e.validated));
    CHECK_FALSE(e.forcing_limit.empty());
  }
  for (const char* id : {"noise-free-zero-coupling", "ae-zero-coupling", "rz-zero-coupling",
                         "gaussian-zero-coupling"})
    CHECK(ids.count(id) == 1);
  for (const DiscrepancyEntry& e : discrepancy_ledger())
    if (e.id.find("zero-coupling") != std::string::npos) {
      CHECK(e.validated == 1.0);
      CHECK(e.deviation > 0.5);
    }
}

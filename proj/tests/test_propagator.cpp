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

#include <cmath>
#include <numbers>

#include "noisydk/propagator.hpp"

using namespace noisydk;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("zero coupling accumulates the exact dynamic phase") {
  const DKParams p{1.3, 2.1, 0.0, 0.8};
  const double a = -6.0, b = 4.0;
  const AmplitudePair end = propagate(p, CouplingProfile::constant(0.0), a, b, {});
  // phase = -int (D0 + D1 tanh(t/T)) dt
  auto prim = [&](double t) {
    return p.delta0 * t + p.delta1 * p.t_cap * std::log(std::cosh(t / p.t_cap));
  };
  const cplx want = std::exp(cplx{0.0, -(prim(b) - prim(a))});
  CHECK(std::abs(end.c1 - want) < 1e-8);
  CHECK(std::abs(end.c2) == 0.0);
}

TEST_CASE("resonant sech pulse is an exact rotation") {
  // D0 = D1 = 0: pulse area 2 int J sech(t/T) dt = 2 pi T J
  for (double j : {0.1, 0.25, 0.5, 0.8, 1.7}) {
    const DKParams p{0.0, 0.0, j, 1.0};
    const double q = survival_numeric(p, CouplingProfile::constant(j)).q;
    CHECK_THAT(q, WithinAbs(std::pow(std::cos(pi * j), 2), 1e-8));
  }
}

TEST_CASE("norm is conserved") {
  const DKParams p{0.5, 3.0, 2.0, 1.0};
  for (const CouplingProfile& prof :
       {CouplingProfile::constant(2.0), CouplingProfile::single_flip(2.0, 0.4),
        CouplingProfile::gaussian_form(2.0, -0.3)}) {
    const AmplitudePair end = propagate(p, prof, -10.0, 10.0, {});
    CHECK_THAT(end.norm(), WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("backward propagation undoes forward propagation") {
  const DKParams p{4.0, 5.0, pi / 2, 1.0};
  const CouplingProfile prof = CouplingProfile::single_flip(p.j, 0.7);
  const AmplitudePair mid = propagate(p, prof, -12.0, 3.0, {});
  const AmplitudePair back = propagate(p, prof, 3.0, -12.0, mid);
  CHECK(std::abs(back.c1 - 1.0) < 1e-8);
  CHECK(std::abs(back.c2) < 1e-8);
}

TEST_CASE("survival is even in J and unchanged by an early flip") {
  const DKParams p{2.0, 3.0, 1.2, 1.0};
  const double q = survival_numeric(p, CouplingProfile::constant(1.2)).q;
  CHECK_THAT(survival_numeric(p, CouplingProfile::constant(-1.2)).q, WithinAbs(q, 1e-9));
  CHECK_THAT(survival_numeric(p, CouplingProfile::single_flip(1.2, -24.0)).q,
             WithinAbs(q, 1e-9));
}

TEST_CASE("a sampled constant path reproduces the constant profile") {
  const DKParams p{1.0, 2.0, 0.9, 1.0};
  SampledCoupling s;
  for (int i = 0; i <= 100; ++i) {
    s.times.push_back(-25.0 + 0.5 * i);
    s.values.push_back(0.9);
  }
  const double q_const = survival_numeric(p, CouplingProfile::constant(0.9)).q;
  CHECK_THAT(survival_numeric(p, CouplingProfile::sampled(s)).q, WithinAbs(q_const, 1e-9));
  s.interpolation = SampledCoupling::Interpolation::hold;
  CHECK_THAT(survival_numeric(p, CouplingProfile::sampled(s)).q, WithinAbs(q_const, 1e-9));
}

TEST_CASE("a held two-level path equals a single flip") {
  const DKParams p{4.0, 5.0, pi / 2, 1.0};
  SampledCoupling s;
  s.interpolation = SampledCoupling::Interpolation::hold;
  s.times = {-25.0, 0.3, 25.0};
  s.values = {p.j, -p.j, -p.j};
  CHECK_THAT(survival_numeric(p, CouplingProfile::sampled(s)).q,
             WithinAbs(survival_numeric(p, CouplingProfile::single_flip(p.j, 0.3)).q, 1e-9));
}

TEST_CASE("Gaussian-form oracle at zero coupling stays in its level") {
  const AdiabaticSurvival s = survival_numeric_gaussian({4.0, 3.0, 0.0, 1.0}, 0.5);
  CHECK_THAT(s.same_level, WithinAbs(1.0, 1e-7));
  CHECK_THAT(s.transition, WithinAbs(0.0, 1e-7));
}

TEST_CASE("propagator argument checks") {
  const DKParams p{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(survival_numeric(p, CouplingProfile::constant(1.0), 5.0), DomainError);
  CHECK_THROWS_AS(propagate(p, CouplingProfile::constant(1.0), 0.0, 1.0, {2.0, 0.0}),
                  DomainError);
  SampledCoupling short_path{{-1.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(survival_numeric(p, CouplingProfile::sampled(short_path)), DomainError);
  SampledCoupling unsorted{{0.0, -1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(CouplingProfile::sampled(unsorted), DomainError);
}

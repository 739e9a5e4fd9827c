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
#include <limits>

#include "noisydk/model.hpp"

using namespace noisydk;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("tanh and sech limits") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(tanh_sech(inf).tanh == 1.0);
  CHECK(tanh_sech(inf).sech == 0.0);
  CHECK(tanh_sech(-inf).tanh == -1.0);
  for (double x : {-30.0, -2.0, -0.1, 0.0, 0.3, 4.0, 700.0}) {
    const TanhSech ts = tanh_sech(x);
    CHECK_THAT(ts.tanh, WithinAbs(std::tanh(x), 1e-15));
    CHECK_THAT(ts.sech, WithinRel(1.0 / std::cosh(x), 1e-14));
  }
}

TEST_CASE("unit point keeps the small complement accurate") {
  const UnitPoint u = unit_point(20.0, 1.0);
  CHECK_THAT(u.zc, WithinRel(std::exp(-40.0) / (1.0 + std::exp(-40.0)), 1e-13));
  CHECK(u.z == 1.0);
  const UnitPoint v = unit_point(-20.0, 1.0);
  CHECK(v.zc == 1.0);
  CHECK_THAT(v.z, WithinRel(std::exp(-40.0) / (1.0 + std::exp(-40.0)), 1e-13));
  CHECK(unit_point(0.0, 2.0).z == 0.5);
  CHECK(unit_point(std::numeric_limits<double>::infinity(), 1.0).zc == 0.0);
}

TEST_CASE("Hamiltonian is real symmetric and traceless") {
  const DKParams p{1.0, 2.5, 0.8, 1.3};
  for (double t : {-3.0, 0.0, 0.7}) {
    const HamiltonianMatrix h = hamiltonian_at(p, p.j, t);
    CHECK(h.is_hermitian());
    CHECK(std::abs(h.trace()) == 0.0);
    CHECK_THAT(h(0, 0).real(), WithinAbs(detuning_at(p, t), 1e-15));
    CHECK_THAT(h(0, 1).real(), WithinAbs(p.j / std::cosh(t / p.t_cap), 1e-15));
  }
}

TEST_CASE("hypergeometric parameters satisfy their defining relations") {
  for (const DKParams& p : {DKParams{4.0, 5.0, 1.5, 1.0}, DKParams{0.0, 1.0, 3.0, 2.0},
                            DKParams{-2.0, 0.5, 0.5, 0.7}}) {
    const HypergeomParams hp = dk_hypergeometric_params(p);
    // lambda mu = -T^2 J^2, lambda + mu = 2 i T D1
    CHECK(std::abs(hp.lambda * hp.mu + p.t_cap * p.t_cap * p.j * p.j) < 1e-12);
    CHECK(std::abs(hp.lambda + hp.mu - cplx{0.0, 2.0 * p.t_cap * p.delta1}) < 1e-12);
    CHECK(hp.nu.real() == 0.5);
    CHECK_THAT(hp.nu.imag(), WithinAbs(-p.t_cap * (p.delta0 - p.delta1), 1e-15));
  }
}

TEST_CASE("level crossing exists only for |D0| < |D1|") {
  const auto t = level_crossing_time({1.0, 2.0, 1.0, 1.5});
  REQUIRE(t.has_value());
  CHECK_THAT(detuning_at({1.0, 2.0, 1.0, 1.5}, *t), WithinAbs(0.0, 1e-14));
  CHECK_FALSE(level_crossing_time({3.0, 2.0, 1.0, 1.0}).has_value());
  CHECK_FALSE(level_crossing_time({1.0, 0.0, 1.0, 1.0}).has_value());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((DKParams{0.0, 1.0, 1.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((DKParams{std::nan(""), 1.0, 1.0, 1.0}.validate()), DomainError);
  CHECK_NOTHROW((DKParams{0.0, 0.0, 0.0, 1.0}.validate()));
}

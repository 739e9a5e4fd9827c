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
#include <sstream>
#include <stdexcept>
#include <vector>

#include "noisydk/noise.hpp"
#include "noisydk/parallel.hpp"

using namespace noisydk;
using Catch::Matchers::WithinAbs;

namespace {

struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Moments moments(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= double(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / double(v.size() - 1) / double(v.size()))};
}

// products x(0) x(lag) and the values x(0) over an ensemble
void check_autocorrelation(NoiseKind kind, double tau_c, double sigma, std::size_t paths) {
  const NoiseSpec spec{kind, tau_c, sigma, 2024};
  const std::vector<double> grid = uniform_grid(0.0, 3.0 * tau_c, 61);
  const std::size_t lags[] = {10, 20, 40};  // tau_c/2, tau_c, 2 tau_c
  std::vector<std::vector<double>> prod(3);
  std::vector<double> first;
  for (std::size_t k = 0; k < paths; ++k) {
    const NoisePath path = sample_path(spec, grid, k);
    first.push_back(path.values[0]);
    for (int l = 0; l < 3; ++l) prod[l].push_back(path.values[0] * path.values[lags[l]]);
  }
  const Moments m0 = moments(first);
  CHECK(std::abs(m0.mean) < 4.0 * m0.stderr_);
  for (int l = 0; l < 3; ++l) {
    const double tau = grid[lags[l]] - grid[0];
    const double want = sigma * sigma * std::exp(-tau / tau_c);
    const Moments m = moments(prod[l]);
    INFO("lag " << tau << " estimate " << m.mean << " +- " << m.stderr_ << " want " << want);
    CHECK(std::abs(m.mean - want) < 4.0 * m.stderr_);
  }
}

}  // namespace

TEST_CASE("telegraph autocorrelation is sigma^2 exp(-tau/tau_c)") {
  check_autocorrelation(NoiseKind::telegraph, 1.0, 1.5, 20000);
  check_autocorrelation(NoiseKind::telegraph, 0.2, 0.7, 20000);
}

TEST_CASE("OU autocorrelation is sigma^2 exp(-tau/tau_c)") {
  check_autocorrelation(NoiseKind::gaussian_ou, 1.0, 1.5, 20000);
  check_autocorrelation(NoiseKind::gaussian_ou, 3.0, 0.4, 20000);
}

TEST_CASE("telegraph paths take the values +-sigma and flip at the recorded times") {
  const NoiseSpec spec{NoiseKind::telegraph, 0.5, 2.0, 1};
  const std::vector<double> grid = grid_with_spacing(-10.0, 10.0, 0.05);
  const NoisePath path = sample_telegraph_path(spec, grid, 3);
  for (double v : path.values) CHECK(std::abs(v) == 2.0);
  std::size_t flips = 0;
  for (std::size_t i = 1; i < path.values.size(); ++i)
    if (path.values[i] != path.values[i - 1]) ++flips;
  // two flips inside one grid cell cancel on the grid but both are recorded
  CHECK(flips <= path.switch_times.size());
  CHECK(path.switch_times.size() > 5);
  // the coupling profile holds the sign between the exact switch times
  const CouplingProfile prof = path.coupling();
  const SampledCoupling& s = *prof.path;
  for (std::size_t i = 0; i + 1 < path.switch_times.size(); ++i) {
    const double mid = 0.5 * (path.switch_times[i] + path.switch_times[i + 1]);
    const double before = s.value_at(path.switch_times[i] - 1e-12);
    CHECK(s.value_at(mid) == -before);
  }
}

TEST_CASE("paths are pure functions of seed and trajectory index") {
  const std::vector<double> grid = grid_with_spacing(-5.0, 5.0, 0.02);
  for (NoiseKind kind : {NoiseKind::telegraph, NoiseKind::gaussian_ou}) {
    const NoiseSpec spec{kind, 0.5, 1.0, 99};
    const NoisePath a = sample_path(spec, grid, 17);
    const NoisePath b = sample_path(spec, grid, 17);
    CHECK(a.values == b.values);
    CHECK(a.switch_times == b.switch_times);
    CHECK(sample_path(spec, grid, 18).values != a.values);
    NoiseSpec other = spec;
    other.seed = 100;
    CHECK(sample_path(other, grid, 17).values != a.values);
  }
}

TEST_CASE("zero amplitude gives a silent path") {
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  for (double v : sample_path({NoiseKind::gaussian_ou, 1.0, 0.0, 0}, grid).values)
    CHECK(v == 0.0);
}

TEST_CASE("telegraph sampler refuses coarse grids") {
  const NoiseSpec spec{NoiseKind::telegraph, 1.0, 1.0, 0};
  CHECK_THROWS_AS(sample_telegraph_path(spec, uniform_grid(0.0, 10.0, 11), 0), DomainError);
  CHECK_THROWS_AS(sample_ou_path(spec, uniform_grid(0.0, 1.0, 11), 0), DomainError);
}

TEST_CASE("noise spec validation and parsing") {
  CHECK_THROWS_AS((NoiseSpec{NoiseKind::telegraph, 0.0, 1.0, 0}.validate()), ConfigError);
  CHECK_THROWS_AS((NoiseSpec{NoiseKind::telegraph, 1.0, -1.0, 0}.validate()), ConfigError);
  CHECK(parse_noise_kind("telegraph") == NoiseKind::telegraph);
  CHECK(parse_noise_kind("gaussian-ou") == NoiseKind::gaussian_ou);
  CHECK(to_string(NoiseKind::gaussian_ou) == "gaussian-ou");
  try {
    parse_noise_kind("pink");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "noise");
  }
}

TEST_CASE("uniform flip time stays in its window") {
  const NoiseSpec spec{NoiseKind::telegraph, 1.0, 1.0, 5};
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double t = sample_flip_time(spec, -5.0, 5.0, k);
    CHECK(t >= -5.0);
    CHECK(t <= 5.0);
  }
  CHECK(sample_flip_time(spec, 2.0, 2.0) == 2.0);
  CHECK_THROWS_AS(sample_flip_time(spec, 1.0, 0.0), DomainError);
}

TEST_CASE("path CSV has a header and one row per node") {
  const NoisePath path =
      sample_path({NoiseKind::gaussian_ou, 1.0, 1.0, 0}, uniform_grid(0.0, 1.0, 5));
  std::ostringstream os;
  path.write_csv(os);
  const std::string s = os.str();
  CHECK(s.rfind("t,value\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 6);
}

TEST_CASE("parallel_map keeps index order for any worker count") {
  for (unsigned w : {1u, 2u, 7u}) {
    const std::vector<std::size_t> out =
        parallel_map<std::size_t>(100, w, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
  }
}

TEST_CASE("parallel_map rethrows the lowest failing index") {
  for (unsigned w : {1u, 4u}) {
    try {
      parallel_map<int>(50, w, [](std::size_t i) -> int {
        if (i == 13 || i == 40) throw std::runtime_error(std::to_string(i));
        return 0;
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "13");
    }
  }
}

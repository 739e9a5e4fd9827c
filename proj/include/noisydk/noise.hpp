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

// Colored Markovian coupling noise with <x> = 0 and
// <x(t + tau) x(t)> = sigma^2 exp(-|tau| / tau_c).
//
//   telegraph    two-state (+-sigma) Markov jump process, flip rate 1/(2 tau_c)
//   gaussian_ou  Ornstein-Uhlenbeck process, exact one-step update
//
// Every path is a pure function of (spec, grid, trajectory index): the
// generator of trajectory k is seeded from splitmix64(seed, k), so ensembles
// can be sampled in any order or in parallel.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "noisydk/errors.hpp"
#include "noisydk/propagator.hpp"

namespace noisydk {

enum class NoiseKind { telegraph, gaussian_ou };

inline std::string to_string(NoiseKind k) {
  return k == NoiseKind::telegraph ? "telegraph" : "gaussian-ou";
}

inline NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "telegraph") return NoiseKind::telegraph;
  if (s == "gaussian-ou" || s == "ou" || s == "gaussian") return NoiseKind::gaussian_ou;
  throw ConfigError("noise", "unknown noise kind '" + s + "'");
}

struct NoiseSpec {
  NoiseKind kind = NoiseKind::telegraph;
  double tau_c = 1.0;
  double sigma = 0.0;  ///< telegraph: the switching amplitude J
  std::uint64_t seed = 0;

  void validate() const {
    if (!(tau_c > 0.0) || !std::isfinite(tau_c))
      throw ConfigError("tau_c", "must be positive and finite");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
      throw ConfigError("sigma", "must be non-negative and finite");
  }
};

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for trajectory `index` of the ensemble `seed`.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b),
                    std::uint32_t(b >> 32)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// n equally spaced points from lo to hi inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo) || n < 2)
    throw DomainError("uniform_grid: need finite lo < hi and n >= 2");
  std::vector<double> g(n);
  const double h = (hi - lo) / double(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * double(i);
  g.back() = hi;
  return g;
}

/// Grid over [lo, hi] with spacing at most `max_spacing`.
inline std::vector<double> grid_with_spacing(double lo, double hi,
                                             double max_spacing) {
  if (!(max_spacing > 0.0)) throw DomainError("grid spacing must be positive");
  const double n = std::ceil((hi - lo) / max_spacing);
  if (!(n < 5e7)) throw DomainError("noise grid too large");
  return uniform_grid(lo, hi, std::size_t(n) + 1);
}

struct NoisePath {
  std::vector<double> times;
  std::vector<double> values;
  /// Exact jump times of a telegraph path inside the grid window.
  std::vector<double> switch_times;
  NoiseSpec spec;

  /// Coupling profile x(t) sech(t/T) for the propagator. Telegraph paths
  /// use their exact jump times; OU paths interpolate linearly.
  CouplingProfile coupling() const {
    SampledCoupling s;
    if (spec.kind == NoiseKind::telegraph) {
      s.interpolation = SampledCoupling::Interpolation::hold;
      s.times.reserve(switch_times.size() + 2);
      s.times.push_back(times.front());
      s.values.push_back(values.front());
      double v = values.front();
      for (double t : switch_times) {
        if (t == s.times.back()) continue;
        v = -v;
        s.times.push_back(t);
        s.values.push_back(v);
      }
      if (s.times.back() < times.back()) {
        s.times.push_back(times.back());
        s.values.push_back(v);
      }
    } else {
      s.interpolation = SampledCoupling::Interpolation::linear;
      s.times = times;
      s.values = values;
    }
    return CouplingProfile::sampled(std::move(s));
  }

  void write_csv(std::ostream& os) const {
    const auto old = os.precision(17);
    os << "t,value\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      os << times[i] << ',' << values[i] << '\n';
    os.precision(old);
  }
};

namespace detail {

inline void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw DomainError("noise grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i]))
      throw DomainError("noise grid must be finite and strictly increasing");
}

}  // namespace detail

/// Stationary telegraph path: initial sign equiprobable, exponential waiting
/// times with rate 1/(2 tau_c). Requires grid spacing <= tau_c / 10.
inline NoisePath sample_telegraph_path(const NoiseSpec& spec,
                                       const std::vector<double>& grid,
                                       std::uint64_t trajectory = 0) {
  spec.validate();
  if (spec.kind != NoiseKind::telegraph)
    throw DomainError("sample_telegraph_path: spec is not telegraph");
  detail::check_grid(grid);
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] - grid[i - 1] > spec.tau_c / 10.0 * (1.0 + 1e-12))
      throw DomainError("sample_telegraph_path: grid spacing exceeds tau_c/10");

  NoisePath path{grid, std::vector<double>(grid.size()), {}, spec};
  if (spec.sigma == 0.0) return path;

  std::mt19937_64 eng = stream_engine(spec.seed, trajectory);
  std::uniform_int_distribution<int> coin(0, 1);
  std::exponential_distribution<double> wait(1.0 / (2.0 * spec.tau_c));
  double sign = coin(eng) ? 1.0 : -1.0;
  double next = grid.front() + wait(eng);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (next <= grid[i]) {
      sign = -sign;
      path.switch_times.push_back(next);
      next += wait(eng);
    }
    path.values[i] = sign * spec.sigma;
  }
  return path;
}

/// Stationary OU path: x0 ~ N(0, sigma^2), then
/// x(t + d) = x(t) e^{-d/tau_c} + sigma sqrt(1 - e^{-2d/tau_c}) xi.
inline NoisePath sample_ou_path(const NoiseSpec& spec,
                                const std::vector<double>& grid,
                                std::uint64_t trajectory = 0) {
  spec.validate();
  if (spec.kind != NoiseKind::gaussian_ou)
    throw DomainError("sample_ou_path: spec is not gaussian-ou");
  detail::check_grid(grid);
  NoisePath path{grid, std::vector<double>(grid.size()), {}, spec};
  if (spec.sigma == 0.0) return path;

  std::mt19937_64 eng = stream_engine(spec.seed, trajectory);
  std::normal_distribution<double> xi(0.0, 1.0);
  double x = spec.sigma * xi(eng);
  path.values[0] = x;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double decay = std::exp(-(grid[i] - grid[i - 1]) / spec.tau_c);
    x = x * decay + spec.sigma * std::sqrt(-std::expm1(-2.0 * (grid[i] - grid[i - 1]) /
                                                       spec.tau_c)) *
                        xi(eng);
    path.values[i] = x;
  }
  return path;
}

inline NoisePath sample_path(const NoiseSpec& spec,
                             const std::vector<double>& grid,
                             std::uint64_t trajectory = 0) {
  return spec.kind == NoiseKind::telegraph
             ? sample_telegraph_path(spec, grid, trajectory)
             : sample_ou_path(spec, grid, trajectory);
}

/// Uniform switch time on [lo, hi].
inline double sample_flip_time(const NoiseSpec& spec, double lo, double hi,
                               std::uint64_t trajectory = 0) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("sample_flip_time: window must be finite");
  if (hi < lo) throw DomainError("sample_flip_time: empty window");
  if (hi == lo) return lo;
  std::mt19937_64 eng = stream_engine(spec.seed, trajectory);
  std::uniform_real_distribution<double> u(lo, hi);
  return u(eng);
}

}  // namespace noisydk

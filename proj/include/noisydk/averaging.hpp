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

// Averages of survival probabilities: over the switch time t0 (composite
// trapezoid with Romberg extrapolation), over a zero-mean Gaussian coupling
// distribution (Gauss-Hermite), and over Monte-Carlo noise trajectories.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "noisydk/analytic.hpp"
#include "noisydk/errors.hpp"
#include "noisydk/model.hpp"
#include "noisydk/noise.hpp"
#include "noisydk/parallel.hpp"
#include "noisydk/propagator.hpp"
#include "noisydk/result.hpp"
#include "noisydk/specfun.hpp"

namespace noisydk {

/// How the t0 integral is normalized.
enum class T0Measure {
  normalized,  ///< divide by the window length (uniform t0 distribution)
  per_tau_c,   ///< divide by tau_c, the literal figure-axis definition
};

struct AverageSpec {
  double t0_lo = -5.0;
  double t0_hi = 5.0;
  std::size_t t0_points = 33;  ///< initial trapezoid nodes
  double j_sigma = 1.0;        ///< std of P(J)
  std::size_t quad_order = 16; ///< initial Gauss-Hermite order
  std::size_t mc_trajectories = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  double tau_c = 1.0;
  T0Measure measure = T0Measure::normalized;

  /// Window [-k tau_c, k tau_c].
  static AverageSpec for_tau_c(double tau_c, double k = 5.0) {
    AverageSpec s;
    s.tau_c = tau_c;
    s.t0_lo = -k * tau_c;
    s.t0_hi = k * tau_c;
    return s;
  }

  void validate() const {
    if (!std::isfinite(t0_lo) || !std::isfinite(t0_hi) || !(t0_hi > t0_lo))
      throw ConfigError("t0_window", "need finite lo < hi");
    if (t0_points < 3) throw ConfigError("t0_points", "must be at least 3");
    if (quad_order < 2) throw ConfigError("quad_order", "must be at least 2");
    if (mc_trajectories < 1)
      throw ConfigError("mc_trajectories", "must be at least 1");
    if (!(tol > 0.0)) throw ConfigError("tol", "must be positive");
    if (!(tau_c > 0.0)) throw ConfigError("tau_c", "must be positive");
  }
};

// ---------------------------------------------------------------------------
// t0 quadrature
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxTrapezoidIntervals = std::size_t{1} << 20;

/// Average of q(t0) over the window of `spec`. Interior `breakpoints` (jumps
/// or kinks of q) split the window so that every piece is smooth; all pieces
/// are refined together and the sum is Romberg-extrapolated until two
/// successive diagonal entries differ by less than spec.tol.
inline double average_over_t0(const std::function<double(double)>& q,
                              const AverageSpec& spec,
                              std::vector<double> breakpoints = {}) {
  spec.validate();
  const double lo = spec.t0_lo, hi = spec.t0_hi, len = hi - lo;
  std::vector<double> edges{lo};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double b : breakpoints)
    if (b > lo && b < hi && b > edges.back()) edges.push_back(b);
  edges.push_back(hi);

  struct Piece {
    double a, b;
    std::size_t n;  // current intervals
    double sum;     // trapezoid sum at n (times h gives the integral)
  };
  std::vector<Piece> pieces;
  const double base = double(spec.t0_points - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const std::size_t n =
        std::max<std::size_t>(2, std::size_t(std::ceil(base * (b - a) / len)));
    // one-sided limits at the piece ends: nudge inward by one ulp
    const double fa = q(i == 0 ? a : std::nextafter(a, b));
    const double fb = q(i + 2 == edges.size() ? b : std::nextafter(b, a));
    double s = 0.5 * (fa + fb);
    const double h = (b - a) / double(n);
    for (std::size_t k = 1; k < n; ++k) s += q(a + h * double(k));
    pieces.push_back({a, b, n, s});
  }
  auto integral = [&] {
    specfun::CompensatedSum acc;
    for (const Piece& p : pieces) acc.add(p.sum * (p.b - p.a) / double(p.n));
    return acc.value().real();
  };
  const double norm = spec.measure == T0Measure::normalized ? len : spec.tau_c;

  std::vector<std::vector<double>> table{{integral() / norm}};
  std::size_t total = 0;
  for (const Piece& p : pieces) total += p.n;
  for (std::size_t level = 1;; ++level) {
    total *= 2;
    if (total > kMaxTrapezoidIntervals)
      throw ConvergenceError("average_over_t0: no convergence within " +
                             std::to_string(kMaxTrapezoidIntervals) +
                             " intervals");
    for (Piece& p : pieces) {
      const double h = (p.b - p.a) / double(p.n);
      for (std::size_t k = 0; k < p.n; ++k)
        p.sum += q(p.a + h * (double(k) + 0.5));
      p.n *= 2;
    }
    std::vector<double> row{integral() / norm};
    double f = 1.0;
    for (std::size_t m = 1; m <= level; ++m) {
      f *= 4.0;
      row.push_back(row[m - 1] + (row[m - 1] - table[level - 1][m - 1]) / (f - 1.0));
    }
    const double change = std::abs(row.back() - table.back().back());
    table.push_back(std::move(row));
    if (change < spec.tol && level >= 2) return table.back().back();
  }
}

// ---------------------------------------------------------------------------
// Gaussian coupling distribution
// ---------------------------------------------------------------------------

/// Nodes and weights for int e^{-x^2} f(x) dx (physicists' Hermite).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

/// Orthonormal Hermite recurrence at x: returns (h_n(x), h_n'(x)).
inline std::pair<double, double> hermite_value(std::size_t n, double x) {
  double p1 = 1.0 / std::pow(std::numbers::pi, 0.25), p2 = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    const double dj = double(j);
    p1 = x * std::sqrt(2.0 / dj) * p2 - std::sqrt((dj - 1.0) / dj) * p3;
  }
  return {p1, std::sqrt(2.0 * double(n)) * p2};
}

/// Number of Hermite roots below x: Sturm count on the Jacobi matrix
/// (zero diagonal, off-diagonal sqrt(k/2)).
inline std::size_t hermite_roots_below(std::size_t n, double x) {
  std::size_t count = 0;
  double q = -x;
  for (std::size_t k = 0;; ++k) {
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
    if (k + 1 == n) break;
    q = -x - 0.5 * double(k + 1) / q;
  }
  return count;
}

}  // namespace detail

/// Roots by Sturm-sequence bisection, polished by Newton on the orthonormal
/// recurrence; weights 2 / h_n'(x)^2 at the polished roots. Outer weights
/// underflow to zero for large n, as they should.
inline GaussHermiteRule gauss_hermite_rule(std::size_t n) {
  if (n < 1 || n > 1000) throw DomainError("gauss_hermite_rule: order out of range");
  GaussHermiteRule r{std::vector<double>(n), std::vector<double>(n)};
  const double bound = std::sqrt(2.0 * double(n) + 1.0) + 1.0;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // root with ascending index k = n - 1 - i, i.e. the i-th largest
    const std::size_t k = n - 1 - i;
    double lo = 0.0, hi = bound;
    if (n % 2 == 1 && i == n / 2) {
      lo = hi = 0.0;
    } else {
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (detail::hermite_roots_below(n, mid) > k ? hi : lo) = mid;
      }
    }
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = detail::hermite_value(n, z);
      if (!std::isfinite(p) || !std::isfinite(dp) || dp == 0.0) break;
      const double step = p / dp;
      if (std::abs(step) > 1e-10 * std::max(1.0, std::abs(z))) break;
      z -= step;
    }
    const double dp = detail::hermite_value(n, z).second;
    r.nodes[i] = z;
    r.nodes[n - 1 - i] = -z;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / (dp * dp);
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

/// E[f(J)] for J ~ N(0, sigma^2) with a fixed Gauss-Hermite order.
inline double gaussian_expectation(const std::function<double(double)>& f,
                                   double sigma, std::size_t order) {
  const GaussHermiteRule r = gauss_hermite_rule(order);
  specfun::CompensatedSum acc;
  const double scale = std::numbers::sqrt2 * sigma;
  for (std::size_t i = 0; i < order; ++i)
    acc.add(r.weights[i] * f(scale * r.nodes[i]));
  return acc.value().real() / std::sqrt(std::numbers::pi);
}

inline constexpr std::size_t kMaxHermiteOrder = 512;

/// int dJ P(J) q(J) with P = N(0, j_sigma^2). The order starts at
/// spec.quad_order and doubles until successive values differ by < spec.tol.
inline double average_over_j(const std::function<double(double)>& q,
                             const AverageSpec& spec) {
  spec.validate();
  if (!(spec.j_sigma > 0.0) || !std::isfinite(spec.j_sigma))
    throw ConfigError("j_sigma", "must be positive and finite");
  std::size_t n = spec.quad_order;
  double prev = gaussian_expectation(q, spec.j_sigma, n);
  while (2 * n <= kMaxHermiteOrder) {
    n *= 2;
    const double cur = gaussian_expectation(q, spec.j_sigma, n);
    if (std::abs(cur - prev) < spec.tol) return cur;
    prev = cur;
  }
  throw ConvergenceError("average_over_j: no convergence up to order " +
                         std::to_string(kMaxHermiteOrder));
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre_rule(std::size_t n) {
  if (n < 1 || n > 4096) throw DomainError("gauss_legendre_rule: order out of range");
  GaussLegendreRule r{std::vector<double>(n), std::vector<double>(n)};
  const double dn = double(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (dn + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = double(j);
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      pp = dn * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    // derivative at the final root
    {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = double(j);
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      pp = dn * (z * p1 - p2) / (z * z - 1.0);
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

/// Half-width, in units of sigma, beyond which the Gaussian weight is dropped
/// (tail mass below 1e-22).
inline constexpr double kGaussianCutoff = 10.0;

/// int dJ P(J) q(J) for a q with jumps at `jumps`. Gauss-Hermite assumes a
/// smooth q, so the line is cut at the jumps and each piece of
/// [-10 sigma, 10 sigma] gets a Gauss-Legendre rule for P(J) q(J), with the
/// same order doubling and tolerance. No jumps means plain Gauss-Hermite.
inline double average_over_j(const std::function<double(double)>& q,
                             const AverageSpec& spec, std::vector<double> jumps) {
  if (jumps.empty()) return average_over_j(q, spec);
  spec.validate();
  const double sigma = spec.j_sigma;
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ConfigError("j_sigma", "must be positive and finite");
  const double lim = kGaussianCutoff * sigma;
  std::vector<double> edges{-lim};
  std::sort(jumps.begin(), jumps.end());
  for (double b : jumps)
    if (b > -lim && b < lim && b > edges.back()) edges.push_back(b);
  edges.push_back(lim);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));

  auto integrate = [&](std::size_t order) {
    const GaussLegendreRule r = gauss_legendre_rule(order);
    specfun::CompensatedSum acc;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      const double mid = 0.5 * (edges[k] + edges[k + 1]);
      const double half = 0.5 * (edges[k + 1] - edges[k]);
      for (std::size_t i = 0; i < order; ++i) {
        const double j = mid + half * r.nodes[i];
        const double x = j / sigma;
        acc.add(half * r.weights[i] * norm * std::exp(-0.5 * x * x) * q(j));
      }
    }
    return acc.value().real();
  };
  std::size_t n = spec.quad_order;
  double prev = integrate(n);
  while (2 * n <= kMaxHermiteOrder) {
    n *= 2;
    const double cur = integrate(n);
    if (std::abs(cur - prev) < spec.tol) return cur;
    prev = cur;
  }
  throw ConvergenceError("average_over_j: no convergence up to order " +
                         std::to_string(kMaxHermiteOrder));
}

// ---------------------------------------------------------------------------
// Averages of the analytic survival probabilities
// ---------------------------------------------------------------------------

/// t0 average of the single-flip survival probability.
inline double telegraph_t0_average(const DKParams& p, const AverageSpec& spec,
                                   Variant variant = Variant::validated) {
  return average_over_t0(
      [&](double t0) { return survival_telegraph_single_flip(p, t0, variant).q; },
      spec);
}

/// t0 average of the Gaussian-form survival probability.
inline double gaussian_t0_average(const DKParams& p, const AverageSpec& spec,
                                  Variant variant = Variant::validated) {
  if (p.j == 0.0) {
    // validated Q is identically 1; the printed one is a constant too
    return survival_gaussian(p, 0.0, variant).q *
           (spec.measure == T0Measure::normalized
                ? 1.0
                : (spec.t0_hi - spec.t0_lo) / spec.tau_c);
  }
  return average_over_t0(
      [&](double t0) { return survival_gaussian(p, t0, variant).q; }, spec,
      gaussian_label_switch_times(p));
}

/// <Qbar> = int dJ P(J) Qbar(J) for the Gaussian-form model.
///
/// Qbar(J) rises by O(1) within ~1e-4 of the couplings at which a label
/// switch time enters the t0 window, which defeats any J rule. The two
/// integrals are therefore swapped: for fixed t0 the survival probability
/// jumps at known couplings (`gaussian_label_switch_couplings`) and is
/// smooth between them, and the inner average is a smooth function of t0.
inline double gaussian_noise_average(const DKParams& p, const AverageSpec& spec,
                                     Variant variant = Variant::validated) {
  p.validate();
  return average_over_t0(
      [&](double t0) {
        return average_over_j(
            [&](double j) {
              DKParams q = p;
              q.j = j;
              return survival_gaussian(q, t0, variant).q;
            },
            spec, [&] {
              // Q is even in J and near |D0| = |D1| has a |J| kink at 0
              std::vector<double> cuts = gaussian_label_switch_couplings(p, t0);
              cuts.push_back(0.0);
              return cuts;
            }());
      },
      spec);
}

/// Slow-noise limit <Q> = int dJ P(J) Q_DK(J), P = N(0, sigma^2).
inline double slow_noise_average(const DKParams& p, double sigma, double tol = 1e-8) {
  AverageSpec spec;
  spec.j_sigma = sigma;
  spec.tol = tol;
  return average_over_j(
      [&](double j) {
        DKParams q = p;
        q.j = j;
        return survival_noise_free(q).q;
      },
      spec);
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct MonteCarloOptions {
  std::size_t trajectories = 1000;
  double t_max = kDefaultTMax;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  unsigned workers = 0;  ///< 0 = hardware default
};

/// Grid used to sample one trajectory: spacing tau_c/10 for telegraph paths
/// (their jumps are kept exactly) and tau_c/50 for OU paths (interpolated).
inline std::vector<double> trajectory_grid(const NoiseSpec& spec, double t_max) {
  const double frac = spec.kind == NoiseKind::telegraph ? 10.0 : 50.0;
  return grid_with_spacing(-t_max, t_max, spec.tau_c / frac);
}

/// Per-trajectory survival probabilities |C1(t_max)|^2 under sampled noise
/// J_noisy(t) sech(t/T); the amplitude is spec.sigma and p.j is not used.
inline std::vector<double> monte_carlo_samples(const DKParams& p,
                                               const NoiseSpec& spec,
                                               const MonteCarloOptions& opt) {
  p.validate();
  spec.validate();
  if (opt.trajectories < 1) throw ConfigError("trajectories", "must be >= 1");
  NoiseSpec s = spec;
  s.seed = opt.seed;
  const std::vector<double> grid = trajectory_grid(s, opt.t_max);
  return parallel_map<double>(opt.trajectories, opt.workers, [&](std::size_t i) {
    try {
      const NoisePath path = sample_path(s, grid, i);
      return survival_numeric(p, path.coupling(), opt.t_max, opt.tol).q;
    } catch (const Error& e) {
      throw TrajectoryError(i, e.what());
    }
  });
}

/// Mean and standard error over the ensemble. Summation is compensated and
/// in trajectory order, so the result does not depend on the worker count.
inline SurvivalResult monte_carlo_survival(const DKParams& p,
                                           const NoiseSpec& spec,
                                           const MonteCarloOptions& opt) {
  const std::vector<double> q = monte_carlo_samples(p, spec, opt);
  specfun::CompensatedSum sum;
  for (double v : q) sum.add(v);
  const double n = double(q.size());
  const double mean = sum.value().real() / n;
  specfun::CompensatedSum dev;
  for (double v : q) dev.add((v - mean) * (v - mean));
  const double se =
      q.size() > 1 ? std::sqrt(dev.value().real() / (n - 1.0) / n) : 0.0;
  return SurvivalResult::make(mean, Provenance::monte_carlo, se);
}

}  // namespace noisydk

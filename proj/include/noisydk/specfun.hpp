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

// Complex Gamma and Gauss hypergeometric 2F1(a, b; c; z) for complex
// parameters and real z in [0, 1].
//
//   2F1(a, b; c; z) = sum_k (a)_k (b)_k / ((c)_k k!) z^k
//
// z <= 1/2 sums the series directly. z > 1/2 goes through the linear
// transformation to 1 - z:
//
//   F(a,b;c;z) = G(c)G(c-a-b)/(G(c-a)G(c-b)) F(a,b;a+b-c+1;1-z)
//              + (1-z)^(c-a-b) G(c)G(a+b-c)/(G(a)G(b)) F(c-a,c-b;c-a-b+1;1-z)
//
// so the series argument never exceeds 1/2. The logarithmic case
// c - a - b in Z is rejected with DegenerateConnectionError.

#pragma once

#include <cmath>
#include <complex>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "noisydk/errors.hpp"

namespace noisydk {

using cplx = std::complex<double>;

namespace specfun {

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

// log Gamma for Re(z) >= 1/2.
inline cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczosCoef[0];
  for (int k = 1; k < 15; ++k) x += kLanczosCoef[k] / (z + double(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(x);
}

}  // namespace detail

/// Neumaier-compensated accumulator for complex sums.
class CompensatedSum {
public:
  void add(cplx v) noexcept {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  cplx value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }

private:
  static void add_part(double& s, double& c, double v) noexcept {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

inline bool is_nonpositive_integer(cplx z) noexcept {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

/// sin(pi z), exact zeros at the integers.
inline cplx sin_pi(cplx z) {
  // reduce Re z into [-1, 1]; sin(pi x) has period 2
  double x = std::fmod(z.real(), 2.0);
  if (x > 1.0) x -= 2.0;
  if (x < -1.0) x += 2.0;
  double s, c;
  if (x == 0.0 || std::abs(x) == 1.0) {
    s = 0.0;
    c = (x == 0.0) ? 1.0 : -1.0;
  } else if (std::abs(x) == 0.5) {
    s = x > 0 ? 1.0 : -1.0;
    c = 0.0;
  } else {
    s = std::sin(std::numbers::pi * x);
    c = std::cos(std::numbers::pi * x);
  }
  const double y = std::numbers::pi * z.imag();
  return {s * std::cosh(y), c * std::sinh(y)};
}

/// log Gamma(z) on some branch of the logarithm; exp() of it is Gamma(z).
/// Throws PoleError at non-positive integers.
inline cplx log_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at non-positive integer " +
                    std::to_string(z.real()));
  if (z.real() >= 0.5) return detail::log_gamma_right(z);
  // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  return std::log(std::numbers::pi) - std::log(sin_pi(z)) -
         detail::log_gamma_right(1.0 - z);
}

/// Gamma(z) for complex z. Reflection formula for Re(z) < 1/2.
inline cplx complex_gamma(cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleError("complex_gamma: pole at non-positive integer " +
                    std::to_string(z.real()));
  if (z.real() >= 0.5) return std::exp(detail::log_gamma_right(z));
  return std::numbers::pi /
         (sin_pi(z) * std::exp(detail::log_gamma_right(1.0 - z)));
}

/// 1 / Gamma(z); exactly zero at the poles of Gamma.
inline cplx reciprocal_gamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-detail::log_gamma_right(z));
  return sin_pi(z) * std::exp(detail::log_gamma_right(1.0 - z)) /
         std::numbers::pi;
}

/// Product of Gamma values and reciprocal Gamma values accumulated in the
/// log domain. A reciprocal at a pole makes the product exactly zero.
class GammaProduct {
public:
  GammaProduct& times_gamma(cplx z) {
    log_ += log_gamma(z);
    return *this;
  }
  GammaProduct& over_gamma(cplx z) {
    if (is_nonpositive_integer(z))
      zero_ = true;
    else
      log_ -= log_gamma(z);
    return *this;
  }
  GammaProduct& times(cplx v) {
    if (v == 0.0)
      zero_ = true;
    else
      log_ += std::log(v);
    return *this;
  }
  cplx value() const { return zero_ ? cplx{0.0} : std::exp(log_); }
  bool is_zero() const noexcept { return zero_; }

private:
  cplx log_{0.0};
  bool zero_ = false;
};

/// Arguments of 2F1(a, b; c; z). `one_minus_z` may carry an accurately
/// computed complement of z (important when z is within ~1e-8 of 1); NaN
/// means "use 1 - z".
struct Hyp2F1Args {
  cplx a;
  cplx b;
  cplx c;
  double z = 0.0;
  double one_minus_z = std::numeric_limits<double>::quiet_NaN();

  double complement() const {
    return std::isnan(one_minus_z) ? 1.0 - z : one_minus_z;
  }

  void validate() const {
    if (!std::isfinite(z) || z < 0.0 || z > 1.0)
      throw DomainError("hyp2f1: z must lie in [0, 1], got " +
                        std::to_string(z));
    for (cplx p : {a, b, c})
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
        throw DomainError("hyp2f1: non-finite parameter");
    if (is_nonpositive_integer(c))
      throw DomainError("hyp2f1: c is zero or a negative integer");
  }
};

inline constexpr std::size_t kSeriesTermCap = 20000;
inline constexpr double kSeriesRelTol = 1e-15;

namespace detail {

// Plain power series; caller guarantees |z| <= 1/2 or a terminating series.
inline cplx hyp2f1_series(cplx a, cplx b, cplx c, double z) {
  CompensatedSum sum;
  sum.add(1.0);
  cplx term = 1.0;
  int quiet = 0;
  for (std::size_t k = 0; k < kSeriesTermCap; ++k) {
    const double kk = double(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    if (term == 0.0) return sum.value();
    sum.add(term);
    // two consecutive negligible terms guard against a near-zero (a + k)
    if (std::abs(term) < kSeriesRelTol * std::abs(sum.value())) {
      if (++quiet == 2) return sum.value();
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge within " +
                         std::to_string(kSeriesTermCap) + " terms");
}

inline bool near_integer(cplx s) {
  const double tol = 1e-12 * std::max(1.0, std::abs(s.real()));
  return std::abs(s.imag()) <= tol &&
         std::abs(s.real() - std::round(s.real())) <= tol;
}

}  // namespace detail

/// Gauss summation 2F1(a, b; c; 1) = G(c)G(c-a-b) / (G(c-a)G(c-b)).
inline cplx hyp2f1_at_unity(cplx a, cplx b, cplx c) {
  if (is_nonpositive_integer(c))
    throw DomainError("hyp2f1_at_unity: c is zero or a negative integer");
  const cplx s = c - a - b;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    // terminating: Chu-Vandermonde is still Gauss' formula, but the
    // polynomial sum avoids Gamma poles in c - a - b
    return detail::hyp2f1_series(a, b, c, 1.0);
  }
  if (!(s.real() > 0.0))
    throw DivergenceError("hyp2f1_at_unity: requires Re(c - a - b) > 0");
  return GammaProduct{}
      .times_gamma(c)
      .times_gamma(s)
      .over_gamma(c - a)
      .over_gamma(c - b)
      .value();
}

/// Gauss hypergeometric function 2F1(a, b; c; z), z in [0, 1].
inline cplx hyp2f1(const Hyp2F1Args& args) {
  args.validate();
  const cplx a = args.a, b = args.b, c = args.c;
  const double z = args.z;
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
    return detail::hyp2f1_series(a, b, c, z);
  const double w = args.complement();
  if (w == 0.0 || z == 1.0) return hyp2f1_at_unity(a, b, c);
  if (z <= 0.5) return detail::hyp2f1_series(a, b, c, z);

  const cplx s = c - a - b;
  if (detail::near_integer(s))
    throw DegenerateConnectionError(
        "hyp2f1: c - a - b is an integer; logarithmic connection case");

  cplx result = 0.0;
  GammaProduct g1;
  g1.times_gamma(c).times_gamma(s).over_gamma(c - a).over_gamma(c - b);
  if (!g1.is_zero())
    result += g1.value() * detail::hyp2f1_series(a, b, 1.0 - s, w);
  GammaProduct g2;
  g2.times_gamma(c).times_gamma(-s).over_gamma(a).over_gamma(b);
  if (!g2.is_zero())
    result += std::exp(s * std::log(w)) * g2.value() *
              detail::hyp2f1_series(c - a, c - b, 1.0 + s, w);
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
    throw ConvergenceError("hyp2f1: non-finite result");
  return result;
}

/// Convenience overload.
inline cplx hyp2f1(cplx a, cplx b, cplx c, double z) {
  return hyp2f1(Hyp2F1Args{a, b, c, z});
}

}  // namespace specfun
}  // namespace noisydk

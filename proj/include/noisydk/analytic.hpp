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

// Closed-form survival probabilities of the (noisy) Demkov-Kunike model.
//
// Every published expression is available in two variants. `as_printed`
// evaluates the published text literally. `validated` is the form that
// satisfies Q -> 1 as J -> 0 and agrees with the numerical propagator.
//
// Conventions. With z = (1 + tanh(t/T))/2, s = sqrt(z(1-z)) and
// r = sqrt(D1^2 - J^2) (principal branch), the exact solution for constant
// coupling J with C(-inf) = (1, 0) is, up to the common unimodular factor
// z^{-iT(D0-D1)/2} (1-z)^{iT(D0+D1)/2},
//
//   C1 = F(lambda, mu; nu; z)
//   C2 = -i T J s / nu * F(lambda+1, mu+1; nu+1; z).
//
// The published lower component carries the opposite sign (equivalent to
// J -> -J); moduli, the matched coefficients and every probability are
// unaffected.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "noisydk/errors.hpp"
#include "noisydk/model.hpp"
#include "noisydk/propagator.hpp"
#include "noisydk/result.hpp"
#include "noisydk/specfun.hpp"

namespace noisydk {

namespace detail {

inline constexpr double kPi = std::numbers::pi;

// e^{-m} cosh(x) for real x.
inline double scaled_cosh(double x, double m) {
  return 0.5 * (std::exp(x - m) + std::exp(-x - m));
}

// e^{-m} cosh(x) where x = k * root and root is real or purely imaginary.
inline double scaled_cosh_root(double k, cplx root, double m) {
  if (root.imag() == 0.0) return scaled_cosh(k * root.real(), m);
  return std::cos(k * root.imag()) * std::exp(-m);
}

inline cplx principal_root(double delta1, double j) {
  return std::sqrt(cplx{delta1 * delta1 - j * j, 0.0});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Noise-free model
// ---------------------------------------------------------------------------

/// Noise-free survival probability.
///
/// validated:  [cosh(2 pi T D0) + cosh(2 pi T r)] / [cosh(2 pi T D0) + cosh(2 pi T D1)]
/// as printed: [cosh(2 pi T D1) + cosh(2 pi T r)] / [cosh(2 pi T D0) + cosh(2 pi T D1)]
///
/// Imaginary r turns cosh into cos. Both are evaluated with a common
/// exponential scale so large T D never overflows.
inline SurvivalResult survival_noise_free(const DKParams& p,
                                          Variant variant = Variant::validated) {
  p.validate();
  const double k = 2.0 * detail::kPi * p.t_cap;
  const double m = k * std::max(std::abs(p.delta0), std::abs(p.delta1));
  const cplx root = detail::principal_root(p.delta1, p.j);
  const double c0 = detail::scaled_cosh(k * p.delta0, m);
  const double c1 = detail::scaled_cosh(k * p.delta1, m);
  const double cr = detail::scaled_cosh_root(k, root, m);
  const double lead = variant == Variant::validated ? c0 : c1;
  return SurvivalResult::make((lead + cr) / (c0 + c1), provenance_of(variant));
}

/// Both variants of a special-case formula.
struct SpecialCaseSurvival {
  SurvivalResult as_printed;
  SurvivalResult validated;

  double discrepancy() const { return std::abs(as_printed.q - validated.q); }
};

/// Allen-Eberly case (D0 = 0).
///
/// as printed: 1 - sinh^2(pi T r) / cosh^2(pi T D1)
/// validated:  cosh^2(pi T r) / cosh^2(pi T D1)
inline SpecialCaseSurvival survival_ae(const DKParams& p) {
  p.validate();
  if (p.delta0 != 0.0)
    throw DomainError("survival_ae: requires delta0 = 0");
  const double k = detail::kPi * p.t_cap;
  const double m = k * std::abs(p.delta1);
  const cplx root = detail::principal_root(p.delta1, p.j);
  const double den = detail::scaled_cosh(k * p.delta1, m);
  const double ratio = detail::scaled_cosh_root(k, root, m) / den;
  // sinh(x)^2 for x real; -sin(y)^2 for x = iy
  double sinh2_scaled;
  if (root.imag() == 0.0) {
    const double x = k * root.real();
    const double sh = 0.5 * (std::exp(x - m) - std::exp(-x - m));
    sinh2_scaled = sh * sh;
  } else {
    const double sn = std::sin(k * root.imag()) * std::exp(-m);
    sinh2_scaled = -sn * sn;
  }
  return {SurvivalResult::make(1.0 - sinh2_scaled / (den * den),
                               Provenance::analytic_as_printed),
          SurvivalResult::make(ratio * ratio, Provenance::analytic_validated)};
}

/// Rosen-Zener case (D1 = 0).
///
/// as printed: cos^2(pi T J) / cosh^2(pi T D0)
/// validated:  1 - sin^2(pi T J) / cosh^2(pi T D0)
inline SpecialCaseSurvival survival_rz(const DKParams& p) {
  p.validate();
  if (p.delta1 != 0.0)
    throw DomainError("survival_rz: requires delta1 = 0");
  const double x = detail::kPi * p.t_cap * p.j;
  const double sech = tanh_sech(detail::kPi * p.t_cap * p.delta0).sech;
  const double c = std::cos(x) * sech, s = std::sin(x) * sech;
  return {SurvivalResult::make(c * c, Provenance::analytic_as_printed),
          SurvivalResult::make(1.0 - s * s, Provenance::analytic_validated)};
}

/// Noise-free asymptotic amplitude factors at z -> 1, from Gauss' sum:
///   first solution  F(lambda, mu; nu; z)                 -> g_first
///   second solution z^{1-nu} F(lambda+1-nu, mu+1-nu; 2-nu; z) -> g_second
/// |g_first|^2 is the noise-free survival probability.
struct AsymptoticFactors {
  cplx g_first;
  cplx g_second;
};

inline AsymptoticFactors asymptotic_factors(const DKParams& p) {
  p.validate();
  const HypergeomParams hp = dk_hypergeometric_params(p);
  const cplx lam = hp.lambda, mu = hp.mu, nu = hp.nu;
  const cplx s = nu - lam - mu;
  using specfun::GammaProduct;
  const cplx first = GammaProduct{}
                         .times_gamma(nu)
                         .times_gamma(s)
                         .over_gamma(nu - lam)
                         .over_gamma(nu - mu)
                         .value();
  const cplx second = GammaProduct{}
                          .times_gamma(2.0 - nu)
                          .times_gamma(s)
                          .over_gamma(1.0 - lam)
                          .over_gamma(1.0 - mu)
                          .value();
  return {first, second};
}

// ---------------------------------------------------------------------------
// Single sign flip of the coupling (telegraph noise)
// ---------------------------------------------------------------------------

/// Amplitudes of the constant-coupling solution with C(-inf) = (1, 0), with
/// the common unimodular factor dropped.
inline AmplitudePair wavefunction_pre_switch(const DKParams& p, double t,
                                             Variant variant = Variant::validated) {
  p.validate();
  if (std::isnan(t)) throw DomainError("wavefunction_pre_switch: t is NaN");
  const UnitPoint u = unit_point(t, p.t_cap);
  if (u.z == 0.0) return {1.0, 0.0};
  const HypergeomParams hp = dk_hypergeometric_params(p);
  using specfun::Hyp2F1Args;
  const cplx f0 = specfun::hyp2f1(Hyp2F1Args{hp.lambda, hp.mu, hp.nu, u.z, u.zc});
  const cplx f1 = specfun::hyp2f1(
      Hyp2F1Args{hp.lambda + 1.0, hp.mu + 1.0, hp.nu + 1.0, u.z, u.zc});
  const double s = std::sqrt(u.z * u.zc);
  cplx lower;
  if (variant == Variant::validated)
    lower = cplx{0.0, -p.t_cap * p.j} * s / hp.nu * f1;
  else
    lower = std::sqrt(hp.lambda * hp.mu) * s / hp.nu * f1;
  return {f0, lower};
}

/// The two independent solutions for the flipped coupling -J at time t.
struct PostSwitchBasis {
  AmplitudePair first;
  AmplitudePair second;
};

inline PostSwitchBasis post_switch_basis(const DKParams& p, double t,
                                         Variant variant = Variant::validated) {
  p.validate();
  const UnitPoint u = unit_point(t, p.t_cap);
  if (u.z == 0.0 || u.zc == 0.0)
    throw DomainError("post_switch_basis: requires 0 < z < 1");
  const HypergeomParams hp = dk_hypergeometric_params(p);
  const cplx lam = hp.lambda, mu = hp.mu, nu = hp.nu;
  using specfun::Hyp2F1Args;
  const cplx f0 = specfun::hyp2f1(Hyp2F1Args{lam, mu, nu, u.z, u.zc});
  const cplx f1 =
      specfun::hyp2f1(Hyp2F1Args{lam + 1.0, mu + 1.0, nu + 1.0, u.z, u.zc});
  const cplx g2 = specfun::hyp2f1(
      Hyp2F1Args{lam + 1.0 - nu, mu + 1.0 - nu, 2.0 - nu, u.z, u.zc});
  const cplx g1 = specfun::hyp2f1(
      Hyp2F1Args{lam + 1.0 - nu, mu + 1.0 - nu, 1.0 - nu, u.z, u.zc});
  const double s = std::sqrt(u.z * u.zc);
  const double lz = std::log(u.z);
  const cplx z_one_minus_nu = std::exp((1.0 - nu) * lz);
  const cplx z_minus_nu = std::exp(-nu * lz);
  const double tj = p.t_cap * p.j;

  PostSwitchBasis out;
  out.first.c1 = f0;
  out.second.c1 = z_one_minus_nu * g2;
  if (variant == Variant::validated) {
    out.first.c2 = cplx{0.0, tj} * s / nu * f1;
    out.second.c2 = cplx{0.0, -1.0 / tj} * s * (1.0 - nu) * z_minus_nu * g1;
  } else {
    const cplx root = std::sqrt(lam * mu);
    out.first.c2 = -root * s / nu * f1;
    out.second.c2 = -(s / root) * (1.0 - nu) * z_minus_nu * g1;
  }
  return out;
}

/// Superposition weights (A, B) of the post-flip solutions, fixed by
/// continuity of (C1, C2) at the flip time t0.
struct MatchedCoefficients {
  cplx a_coef{1.0};
  cplx b_coef{0.0};
  double t0 = 0.0;
};

/// A(t0) and B(t0) in closed form:
///
///   X = nu(1-nu)/(lambda mu) z0^{-nu} F(l+1-nu, m+1-nu; 1-nu; z0) / F(l+1, m+1; nu+1; z0)
///   Y = z0^{1-nu} F(l+1-nu, m+1-nu; 2-nu; z0) / F(l, m; nu; z0)
///   A = (X + Y) / (X - Y),  B = 2 / (Y - X)
///
/// Zero coupling and z0 in {0, 1} give the asymptotic (1, 0).
inline MatchedCoefficients matched_coefficients(const DKParams& p, double t0) {
  p.validate();
  if (std::isnan(t0)) throw DomainError("matched_coefficients: t0 is NaN");
  const UnitPoint u = unit_point(t0, p.t_cap);
  if (u.z == 0.0 || u.zc == 0.0 || p.j == 0.0) return {1.0, 0.0, t0};
  const HypergeomParams hp = dk_hypergeometric_params(p);
  const cplx lam = hp.lambda, mu = hp.mu, nu = hp.nu;
  using specfun::Hyp2F1Args;
  const cplx f0 = specfun::hyp2f1(Hyp2F1Args{lam, mu, nu, u.z, u.zc});
  const cplx f1 =
      specfun::hyp2f1(Hyp2F1Args{lam + 1.0, mu + 1.0, nu + 1.0, u.z, u.zc});
  const cplx g2 = specfun::hyp2f1(
      Hyp2F1Args{lam + 1.0 - nu, mu + 1.0 - nu, 2.0 - nu, u.z, u.zc});
  const cplx g1 = specfun::hyp2f1(
      Hyp2F1Args{lam + 1.0 - nu, mu + 1.0 - nu, 1.0 - nu, u.z, u.zc});
  const double lz = std::log(u.z);
  const cplx x = nu * (1.0 - nu) / (lam * mu) * std::exp(-nu * lz) * g1 / f1;
  const cplx y = std::exp((1.0 - nu) * lz) * g2 / f0;
  const cplx a = (x + y) / (x - y);
  const cplx b = 2.0 / (y - x);
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) ||
      !std::isfinite(b.real()) || !std::isfinite(b.imag()))
    throw DomainError("matched_coefficients: singular matching system");
  return {a, b, t0};
}

/// How to read the Gamma-function group of the published cross term; the
/// published denominator mixes sqrt(J^2 + D1^2) and sqrt(J^2 - D1^2).
enum class CrossTermReading {
  literal,        ///< first pair sqrt(J^2 + D1^2), second pair sqrt(J^2 - D1^2)
  uniform_minus,  ///< sqrt(J^2 - D1^2) in both pairs
};

namespace detail {

inline cplx printed_cross_ratio(const DKParams& p, CrossTermReading reading) {
  const double t = p.t_cap, d0 = p.delta0, d1 = p.delta1, j = p.j;
  const cplx i{0.0, 1.0};
  const cplx minus_root = std::sqrt(cplx{j * j - d1 * d1, 0.0});
  const cplx first_root = reading == CrossTermReading::literal
                              ? cplx{std::sqrt(j * j + d1 * d1), 0.0}
                              : minus_root;
  specfun::GammaProduct g;
  g.times_gamma(0.5 - 0.5 * i * (d0 + d1) * t)
      .times_gamma(0.5 - 0.5 * i * (d0 - d1) * t)
      .times_gamma(1.5 - 0.5 * i * (d0 - d1) * t)
      .times_gamma(0.5 + 0.5 * i * (d0 + d1) * t)
      .over_gamma((1.0 - t * first_root + i * d0 * t) / 2.0)
      .over_gamma((1.0 + t * first_root + i * d0 * t) / 2.0)
      .over_gamma((2.0 - t * minus_root - d1 * t) / 2.0)
      .over_gamma((2.0 + t * minus_root - d1 * t) / 2.0);
  return g.value();
}

}  // namespace detail

/// Survival probability after one sign flip J -> -J at t0.
///
/// validated: Q = |A g1 + B g2|^2 with the Gauss-sum factors of
/// `asymptotic_factors`, expanded as
///   |A|^2 Q_DK + |B|^2 |g2|^2 + 2 Re(conj(A) B conj(g1) g2),
/// where Q_DK is the validated noise-free value (so A = 1, B = 0 reproduces
/// it bit for bit). |g2|^2 = (1/4 + T^2 (D0-D1)^2)[cosh(2 pi T D1) -
/// cosh(2 pi T r)] / (J^2 T^2 [cosh(2 pi T D0) + cosh(2 pi T D1)]).
///
/// as printed: the published three-term expression, with [1 - (D0-D1)^2 T^2]
/// in the |B|^2 term and the published Gamma group in the cross term.
inline SurvivalResult survival_telegraph_from(const DKParams& p,
                                              const MatchedCoefficients& mc,
                                              Variant variant,
                                              CrossTermReading reading =
                                                  CrossTermReading::literal) {
  const cplx a = mc.a_coef, b = mc.b_coef;
  const double qdk = survival_noise_free(p, Variant::validated).q;
  if (variant == Variant::validated) {
    if (b == 0.0)
      return SurvivalResult::make(std::norm(a) * qdk,
                                  Provenance::analytic_validated);
    const AsymptoticFactors g = asymptotic_factors(p);
    const double q = std::norm(a) * qdk + std::norm(b) * std::norm(g.g_second) +
                     2.0 * (std::conj(a) * b * std::conj(g.g_first) * g.g_second)
                               .real();
    return SurvivalResult::make(q, Provenance::analytic_validated);
  }
  double q = std::norm(a) * qdk;
  if (b != 0.0) {
    const double k = 2.0 * detail::kPi * p.t_cap;
    const double m = k * std::max(std::abs(p.delta0), std::abs(p.delta1));
    const cplx root = detail::principal_root(p.delta1, p.j);
    const double c0 = detail::scaled_cosh(k * p.delta0, m);
    const double c1 = detail::scaled_cosh(k * p.delta1, m);
    const double cr = detail::scaled_cosh_root(k, root, m);
    const double dt = (p.delta0 - p.delta1) * p.t_cap;
    const double jt = p.j * p.t_cap;
    q += std::norm(b) * (1.0 - dt * dt) * (c1 - cr) / (jt * jt * (c0 + c1));
    q += 2.0 * (std::conj(a) * b * detail::printed_cross_ratio(p, reading)).real();
  }
  return SurvivalResult::make(q, Provenance::analytic_as_printed);
}

inline SurvivalResult survival_telegraph_single_flip(
    const DKParams& p, double t0, Variant variant = Variant::validated,
    CrossTermReading reading = CrossTermReading::literal) {
  return survival_telegraph_from(p, matched_coefficients(p, t0), variant,
                                 reading);
}

// ---------------------------------------------------------------------------
// Gaussian-form coupling J [tanh(t/T) - tanh(t0/T)]
// ---------------------------------------------------------------------------

/// Rotation angle and renormalized parameters of the frame in which the
/// Gaussian-form coupling becomes the constant J'.
struct TransformedParams {
  double theta = 0.0;
  double delta0p = 0.0;
  double delta1p = 0.0;
  double jp = 0.0;
};

/// tan(2 theta) = J/D1, theta in (-pi/4, pi/4);
///   D0' = (D0 cos^2 2th - D1 sin^2 2th tanh(t0/T)) / cos 2th
///   D1' = D1 / cos 2th
///   J'  = (D0 + D1 tanh(t0/T)) sin 2th
/// D1 = 0 (theta = pi/4) makes D0', D1' singular: SingularTransformError.
inline TransformedParams transformed_params(const DKParams& p, double t0) {
  p.validate();
  if (std::isnan(t0)) throw DomainError("transformed_params: t0 is NaN");
  if (p.delta1 == 0.0)
    throw SingularTransformError(
        "transformed_params: delta1 = 0 gives theta = pi/4 and a singular "
        "rotation; use survival_numeric_gaussian");
  const double theta = 0.5 * std::atan(p.j / p.delta1);
  const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
  const double tau = tanh_sech(t0 / p.t_cap).tanh;
  return {theta, (p.delta0 * c * c - p.delta1 * s * s * tau) / c,
          p.delta1 / c, (p.delta0 + p.delta1 * tau) * s};
}

/// Asymptotic half-gaps of the rotated Hamiltonian at t -> -inf and +inf.
struct AsymptoticGaps {
  double e_a = 0.0;
  double e_e = 0.0;
};

inline AsymptoticGaps asymptotic_gaps(const TransformedParams& tp) {
  return {std::hypot(tp.delta0p - tp.delta1p, tp.jp),
          std::hypot(tp.delta0p + tp.delta1p, tp.jp)};
}

/// Whether the rotated diabatic levels cross (|D0'| < |D1'|). With a crossing
/// the published formula is the survival probability; without one it is the
/// transition probability.
inline bool rotated_levels_cross(const TransformedParams& tp) {
  return std::abs(tp.delta0p) < std::abs(tp.delta1p);
}

namespace detail {

// log|sinh x| and sign(sinh x); x != 0.
inline double log_abs_sinh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(-std::exp(-2.0 * ax)) - std::numbers::ln2;
}

}  // namespace detail

/// The published expression
///   sinh[pi T (Ee - Ea + 2 D1')/2] sinh[pi T (Ea - Ee + 2 D1')/2]
///   / (sinh(pi T Ea) sinh(pi T Ee)),
/// evaluated in the log domain. It is the probability of a transition
/// between the asymptotic adiabatic levels of the rotated model.
inline double gaussian_printed_formula(const TransformedParams& tp,
                                       double t_cap) {
  const AsymptoticGaps g = asymptotic_gaps(tp);
  const double k = detail::kPi * t_cap;
  const double n1 = 0.5 * k * (g.e_e - g.e_a + 2.0 * tp.delta1p);
  const double n2 = 0.5 * k * (g.e_a - g.e_e + 2.0 * tp.delta1p);
  const double d1 = k * g.e_a, d2 = k * g.e_e;
  if (d1 == 0.0 || d2 == 0.0) {
    if (n1 == 0.0 || n2 == 0.0)
      throw SingularTransformError(
          "gaussian formula: 0/0 at a vanishing asymptotic gap");
    throw SingularTransformError("gaussian formula: vanishing asymptotic gap");
  }
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  const double sign = ((n1 > 0) == (n2 > 0)) ? 1.0 : -1.0;
  const double lg = detail::log_abs_sinh(n1) + detail::log_abs_sinh(n2) -
                    detail::log_abs_sinh(d1) - detail::log_abs_sinh(d2);
  return sign * std::exp(lg);
}

/// Zero points t0 at which |D0'| = |D1'|, where the rotated levels switch
/// between crossing and not crossing and the survival probability jumps.
/// tanh(t0/T) = (D0 D1 -+ (D1^2 + J^2)) / J^2.
inline std::vector<double> gaussian_label_switch_times(const DKParams& p) {
  p.validate();
  std::vector<double> out;
  if (p.j == 0.0 || p.delta1 == 0.0) return out;
  const double j2 = p.j * p.j, r2 = p.delta1 * p.delta1 + j2;
  for (double tau : {(p.delta0 * p.delta1 - r2) / j2, (p.delta0 * p.delta1 + r2) / j2})
    if (std::abs(tau) < 1.0) out.push_back(p.t_cap * std::atanh(tau));
  std::sort(out.begin(), out.end());
  return out;
}

/// Couplings +-J at which |D0'| = |D1'| for a fixed t0 (the J-space view of
/// the same jumps): J^2 = (D0 D1 - D1^2)/(1 + tau0) or
/// J^2 = (D0 D1 + D1^2)/(tau0 - 1), tau0 = tanh(t0/T).
inline std::vector<double> gaussian_label_switch_couplings(const DKParams& p,
                                                           double t0) {
  p.validate();
  std::vector<double> out;
  if (p.delta1 == 0.0) return out;
  const double tau = tanh_sech(t0 / p.t_cap).tanh;
  const double d01 = p.delta0 * p.delta1, d11 = p.delta1 * p.delta1;
  for (double j2 : {(d01 - d11) / (1.0 + tau), (d01 + d11) / (tau - 1.0)}) {
    if (!(j2 >= 0.0) || !std::isfinite(j2)) continue;
    // j2 = 0 (|D0| = |D1|): the levels are degenerate at one end for every
    // J != 0, so Q jumps at J = 0 itself
    const double j = std::sqrt(j2);
    out.push_back(-j);
    out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Survival probability for the Gaussian-form coupling with zero point t0.
///
/// Q is the population, after the sweep, of the asymptotic adiabatic level
/// continuously connected to the rotated basis state (cos th, sin th); at
/// J = 0 this is the diabatic survival probability and equals 1.
/// validated: Q = P if the rotated levels cross, 1 - P otherwise, with P the
/// published expression; J' = 0 gives Q = 1 exactly.
/// as printed: P itself.
inline SurvivalResult survival_gaussian(const DKParams& p, double t0,
                                        Variant variant = Variant::validated) {
  const TransformedParams tp = transformed_params(p, t0);
  if (variant == Variant::validated) {
    if (tp.jp == 0.0) return SurvivalResult::make(1.0, Provenance::analytic_validated);
    const double pr = gaussian_printed_formula(tp, p.t_cap);
    return SurvivalResult::make(rotated_levels_cross(tp) ? pr : 1.0 - pr,
                                Provenance::analytic_validated);
  }
  return SurvivalResult::make(gaussian_printed_formula(tp, p.t_cap),
                              Provenance::analytic_as_printed);
}

}  // namespace noisydk

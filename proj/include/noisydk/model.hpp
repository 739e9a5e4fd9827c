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

// Demkov-Kunike two-level model
//
//   H(t) = [D0 + D1 tanh(t/T)] sigma_z + J(t) sech(t/T) sigma_x,   hbar = 1,
//
// and the map z = (1 + tanh(t/T)) / 2 onto the hypergeometric variable.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>

#include "noisydk/errors.hpp"
#include "noisydk/specfun.hpp"

namespace noisydk {

/// Deterministic model parameters. Energies in units of 1/T.
struct DKParams {
  double delta0 = 0.0;  ///< static detuning
  double delta1 = 0.0;  ///< chirp detuning
  double j = 0.0;       ///< coupling amplitude
  double t_cap = 1.0;   ///< pulse period T

  void validate() const {
    if (!std::isfinite(delta0) || !std::isfinite(delta1) || !std::isfinite(j) ||
        !std::isfinite(t_cap))
      throw DomainError("DKParams: all fields must be finite");
    if (!(t_cap > 0.0)) throw DomainError("DKParams: t_cap must be positive");
  }
};

/// Parameters of the Gauss equation z(1-z)C'' + [nu - (lambda+mu+1) z]C' -
/// lambda mu C = 0 satisfied (up to a unimodular factor) by C1.
struct HypergeomParams {
  cplx lambda;
  cplx mu;
  cplx nu;
};

/// 2x2 Hamiltonian at one instant, row-major.
struct HamiltonianMatrix {
  std::array<cplx, 4> m{};

  cplx operator()(int row, int col) const { return m[2 * row + col]; }
  cplx trace() const { return m[0] + m[3]; }
  bool is_hermitian(double tol = 0.0) const {
    return std::abs(m[1] - std::conj(m[2])) <= tol &&
           std::abs(m[0].imag()) <= tol && std::abs(m[3].imag()) <= tol;
  }
  /// Eigenvalues of a traceless Hermitian 2x2: +-sqrt(h00^2 + |h01|^2).
  double half_gap() const { return std::hypot(m[0].real(), std::abs(m[1])); }
};

/// tanh(x) and sech(x) from a single exponential; exact limits at +-inf.
struct TanhSech {
  double tanh;
  double sech;
};

inline TanhSech tanh_sech(double x) noexcept {
  if (std::isinf(x)) return {x > 0 ? 1.0 : -1.0, 0.0};
  const double q = std::exp(-std::abs(x));
  const double e = q * q;
  const double th = (1.0 - e) / (1.0 + e);
  return {x < 0 ? -th : th, 2.0 * q / (1.0 + e)};
}

/// z = (1 + tanh(t/T)) / 2 together with 1 - z, both without cancellation.
struct UnitPoint {
  double z;
  double zc;  ///< 1 - z
};

inline UnitPoint unit_point(double t, double t_cap) noexcept {
  const double x = t / t_cap;
  if (x == std::numeric_limits<double>::infinity()) return {1.0, 0.0};
  if (x == -std::numeric_limits<double>::infinity()) return {0.0, 1.0};
  // (1 + tanh x)/2 = 1/(1 + e^{-2x})
  const double e = std::exp(-2.0 * std::abs(x));
  const double small = e / (1.0 + e);
  const double large = 1.0 / (1.0 + e);
  return x >= 0 ? UnitPoint{large, small} : UnitPoint{small, large};
}

inline double z_of_t(double t, double t_cap) noexcept {
  return unit_point(t, t_cap).z;
}

/// Diabatic detuning D0 + D1 tanh(t/T).
inline double detuning_at(const DKParams& p, double t) noexcept {
  return p.delta0 + p.delta1 * tanh_sech(t / p.t_cap).tanh;
}

/// H at time t for instantaneous coupling amplitude `coupling` (J_noisy(t)).
inline HamiltonianMatrix hamiltonian_at(const DKParams& p, double coupling,
                                        double t) {
  const TanhSech ts = tanh_sech(t / p.t_cap);
  const double d = p.delta0 + p.delta1 * ts.tanh;
  const double g = coupling * ts.sech;
  return HamiltonianMatrix{{cplx{d}, cplx{g}, cplx{g}, cplx{-d}}};
}

/// lambda = iT[sqrt(D1^2 - J^2) + D1], mu = iT[D1 - sqrt(D1^2 - J^2)],
/// nu = 1/2 - iT(D0 - D1). Principal complex square root.
inline HypergeomParams dk_hypergeometric_params(const DKParams& p) {
  const double t = p.t_cap;
  const cplx root =
      std::sqrt(cplx{p.delta1 * p.delta1 - p.j * p.j, 0.0});
  const cplx it{0.0, t};
  return {it * (root + p.delta1), it * (p.delta1 - root),
          cplx{0.5, -t * (p.delta0 - p.delta1)}};
}

/// Zero of the diabatic detuning, t* = T atanh(-D0/D1), when |D0| < |D1|.
inline std::optional<double> level_crossing_time(const DKParams& p) {
  if (p.delta1 == 0.0 || !(std::abs(p.delta0) < std::abs(p.delta1)))
    return std::nullopt;
  return p.t_cap * std::atanh(-p.delta0 / p.delta1);
}

}  // namespace noisydk

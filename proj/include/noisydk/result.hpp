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

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "noisydk/errors.hpp"

namespace noisydk {

/// Which form of a closed-form expression to evaluate.
enum class Variant {
  as_printed,  ///< the expression exactly as published
  validated,   ///< the form pinned by the zero-coupling limit and the ODE oracle
};

/// Where a survival probability came from.
enum class Provenance {
  analytic_as_printed,
  analytic_validated,
  numeric_oracle,
  monte_carlo,
};

inline std::string_view to_string(Variant v) {
  return v == Variant::as_printed ? "as-printed" : "validated";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "as-printed") return Variant::as_printed;
  if (s == "validated") return Variant::validated;
  throw DomainError("unknown variant '" + std::string(s) + "'");
}

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic_as_printed: return "analytic-as-printed";
    case Provenance::analytic_validated: return "analytic-validated";
    case Provenance::numeric_oracle: return "numeric-oracle";
    case Provenance::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

inline Provenance provenance_of(Variant v) {
  return v == Variant::as_printed ? Provenance::analytic_as_printed
                                  : Provenance::analytic_validated;
}

/// Survival probability with its provenance.
struct SurvivalResult {
  double q = 0.0;
  Provenance provenance = Provenance::analytic_validated;
  std::optional<double> std_error;

  /// Range-checks and clamps everything except as-printed values, which are
  /// reported verbatim even when they leave [0, 1].
  static SurvivalResult make(double q, Provenance prov,
                             std::optional<double> se = std::nullopt) {
    if (!std::isfinite(q)) {
      std::ostringstream os;
      os << "survival probability is not finite (" << to_string(prov) << ")";
      throw DomainError(os.str());
    }
    if (prov != Provenance::analytic_as_printed) {
      constexpr double slack = 1e-9;
      if (q < -slack || q > 1.0 + slack) {
        std::ostringstream os;
        os.precision(17);
        os << "survival probability " << q << " outside [0, 1] ("
           << to_string(prov) << ")";
        throw DomainError(os.str());
      }
      q = std::clamp(q, 0.0, 1.0);
    }
    return {q, prov, se};
  }
};

}  // namespace noisydk

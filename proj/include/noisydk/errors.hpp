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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace noisydk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (bad parameters, violated
/// preconditions).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Series or iterative refinement did not converge under its cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Hypergeometric connection formula hit c - a - b in Z.
class DegenerateConnectionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// 2F1 at z = 1 with Re(c - a - b) <= 0.
class DivergenceError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Closed form not available for these parameters; use the numeric path.
class SingularTransformError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Adaptive integrator could not take a step above the minimum size.
class StepSizeError : public Error {
public:
  StepSizeError(const std::string& what, double time)
      : Error(what), time_(time) {}
  /// Time at which the step size collapsed.
  double time() const noexcept { return time_; }

private:
  double time_;
};

/// Failure of one Monte-Carlo trajectory; `index()` identifies it.
class TrajectoryError : public Error {
public:
  TrajectoryError(std::size_t index, const std::string& what)
      : Error("trajectory " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// Invalid CLI / file configuration. `field()` names the offending key.
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

}  // namespace noisydk

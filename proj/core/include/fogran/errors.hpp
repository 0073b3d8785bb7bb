/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_ERRORS_HPP
#define FOGRAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fogran {

/// A configuration or argument value violates a documented precondition.
class InvalidParameterError : public std::invalid_argument {
 public:
  explicit InvalidParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// The access-phase error mass already exceeds the reliability target, so no
/// decode-error budget is left.
class InfeasibleBudgetError : public std::runtime_error {
 public:
  explicit InfeasibleBudgetError(const std::string& what)
      : std::runtime_error(what) {}
};

/// The fronthaul capacity left after signaling overhead is non-positive.
class InfeasibleFronthaulError : public std::runtime_error {
 public:
  explicit InfeasibleFronthaulError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Too few samples to resolve the requested outage quantile.
class InsufficientSamplesError : public std::runtime_error {
 public:
  explicit InsufficientSamplesError(const std::string& what)
      : std::runtime_error(what) {}
};

/// The precoder power/fronthaul fixed point did not certify its invariants.
class PrecoderConvergenceError : public std::runtime_error {
 public:
  PrecoderConvergenceError(const std::string& what, double power_slack,
                           double fronthaul_residual)
      : std::runtime_error(what),
        power_slack(power_slack),
        fronthaul_residual(fronthaul_residual) {}

  double power_slack;
  double fronthaul_residual;
};

}  // namespace fogran

#endif  // FOGRAN_ERRORS_HPP

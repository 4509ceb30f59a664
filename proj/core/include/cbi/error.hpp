// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_ERROR_HPP
#define CBI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbi {

enum class ErrorCode {
  NonIncreasingBreakpoints,
  MassOutOfRange,
  MassSumMismatch,
  EndpointMismatch,
  MassCountMismatch,
  InvalidFactor,
  RefinementOverflow,
  InvalidPlacement,
  PoleEvaluation,
  DegenerateContext,
  OutOfBranchRange,
  ZeroDenominator,
  InvalidRegime,
  NoConvergence,
  InconsistentSolution,
  CostGuard,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Structured rejection raised by every cbi operation. The code identifies the
/// failed contract; what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cbi

#endif  // CBI_ERROR_HPP

// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi/error.hpp"

namespace cbi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonIncreasingBreakpoints: return "NonIncreasingBreakpoints";
    case ErrorCode::MassOutOfRange: return "MassOutOfRange";
    case ErrorCode::MassSumMismatch: return "MassSumMismatch";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::MassCountMismatch: return "MassCountMismatch";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::RefinementOverflow: return "RefinementOverflow";
    case ErrorCode::InvalidPlacement: return "InvalidPlacement";
    case ErrorCode::PoleEvaluation: return "PoleEvaluation";
    case ErrorCode::DegenerateContext: return "DegenerateContext";
    case ErrorCode::OutOfBranchRange: return "OutOfBranchRange";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvalidRegime: return "InvalidRegime";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InconsistentSolution: return "InconsistentSolution";
    case ErrorCode::CostGuard: return "CostGuard";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace cbi

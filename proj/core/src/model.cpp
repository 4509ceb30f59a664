// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cbi/error.hpp"

namespace cbi {
namespace {

std::string at(std::size_t i) { return " at index " + std::to_string(i); }

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

std::size_t IntervalPartition::locate(double x) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (x >= lower(i) && x <= upper(i)) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "point " + std::to_string(x) + " lies outside [0, 1]");
}

IntervalPartition validate_partition(std::vector<double> breakpoints, std::vector<double> masses,
                                     bool fault_free) {
  if (fault_free && !masses.empty() && breakpoints.size() == masses.size()) {
    breakpoints.insert(breakpoints.begin(), 0.0);
  }
  if (masses.empty() || breakpoints.size() != masses.size() + 1) {
    throw Error(ErrorCode::MassCountMismatch,
                std::to_string(breakpoints.size()) + " breakpoints for " +
                    std::to_string(masses.size()) + " masses");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw Error(ErrorCode::EndpointMismatch, "breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i])) {
      throw Error(ErrorCode::NonIncreasingBreakpoints, "non-finite breakpoint" + at(i));
    }
    if (fault_free && i == 1) {
      if (breakpoints[1] != 0.0) {
        throw Error(ErrorCode::NonIncreasingBreakpoints,
                    "fault-free partition needs y_1 = 0 or an implicit zero point");
      }
      continue;
    }
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw Error(ErrorCode::NonIncreasingBreakpoints, "breakpoints not strictly increasing" + at(i));
    }
  }
  if (fault_free && masses.size() < 2) {
    throw Error(ErrorCode::MassCountMismatch, "fault-free partition needs a non-point interval");
  }
  // A single interval [0, 1] carries all the mass: the unconstrained case.
  const bool whole = masses.size() == 1 && masses[0] == 1.0 && !fault_free;
  for (std::size_t i = 0; i < masses.size() && !whole; ++i) {
    if (!(masses[i] > 0.0 && masses[i] < 1.0)) {
      throw Error(ErrorCode::MassOutOfRange, "mass outside (0, 1)" + at(i));
    }
  }
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::fabs(total - 1.0) > kMassSumTolerance) {
    throw Error(ErrorCode::MassSumMismatch, "masses sum to " + std::to_string(total));
  }
  return IntervalPartition(std::move(breakpoints), std::move(masses), fault_free);
}

IntervalPartition uniform_consistent_partition(const std::vector<double>& breakpoints) {
  if (breakpoints.size() < 3) {
    throw Error(ErrorCode::MassOutOfRange, "a single interval would carry mass 1");
  }
  std::vector<double> masses;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    masses.push_back(breakpoints[i] - breakpoints[i - 1]);
  }
  return validate_partition(breakpoints, std::move(masses), false);
}

IntervalPartition refine_partition(const IntervalPartition& partition, int factor,
                                   std::size_t max_intervals) {
  if (factor < 2) {
    throw Error(ErrorCode::InvalidFactor, "refinement factor must be an integer >= 2");
  }
  const std::size_t point = partition.fault_free() ? 1 : 0;
  const std::size_t n = point + (partition.size() - point) * static_cast<std::size_t>(factor);
  if (n > max_intervals) {
    throw Error(ErrorCode::RefinementOverflow,
                std::to_string(n) + " intervals exceed the cap of " + std::to_string(max_intervals));
  }
  std::vector<double> y{0.0};
  std::vector<double> p;
  if (point) {
    y.push_back(0.0);
    p.push_back(partition.mass(0));
  }
  for (std::size_t i = point; i < partition.size(); ++i) {
    const double lo = partition.lower(i);
    const double hi = partition.upper(i);
    const double width = hi - lo;
    double prev = lo;
    for (int s = 1; s <= factor; ++s) {
      const double next = s == factor ? hi : lo + width * s / factor;
      y.push_back(next);
      p.push_back(partition.mass(i) * ((next - prev) / width));
      prev = next;
    }
  }
  return IntervalPartition(std::move(y), std::move(p), partition.fault_free());
}

void validate_observation(const Observation& obs, bool require_integer) {
  if (!(obs.r >= 0.0) || !(obs.k >= 0.0) || !std::isfinite(obs.r) || !std::isfinite(obs.k)) {
    throw Error(ErrorCode::InvalidArgument, "r and k must be finite and nonnegative");
  }
  if (require_integer && (!is_integral(obs.r) || !is_integral(obs.k))) {
    throw Error(ErrorCode::InvalidArgument, "r and k must be integers");
  }
}

void validate_target(const ReliabilityTarget& target) {
  if (target.m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (target.alpha && !(*target.alpha > 0.0 && *target.alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
}

void validate_placement(const IntervalPartition& partition, const Placement& placement) {
  if (placement.positions.size() != partition.size()) {
    throw Error(ErrorCode::InvalidPlacement, "placement has " +
                                                 std::to_string(placement.positions.size()) +
                                                 " positions for " +
                                                 std::to_string(partition.size()) + " intervals");
  }
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const double x = placement.positions[i];
    if (!(x >= partition.lower(i) && x <= partition.upper(i))) {
      throw Error(ErrorCode::InvalidPlacement, "position outside its interval" + at(i));
    }
  }
}

}  // namespace cbi

// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_MODEL_HPP
#define CBI_MODEL_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace cbi {

inline constexpr double kMassSumTolerance = 1e-12;
inline constexpr std::size_t kDefaultRefinementCap = 100000;

/// Interval-probability constraint on the pfd: masses p_i on I_1 = [y_0, y_1]
/// and I_i = (y_{i-1}, y_i]. Instances are only produced by the factory
/// functions below and are immutable afterwards.
///
/// A fault-free partition stores y_1 = 0, so I_1 is the point {0} and p_1 is
/// the probability that the software has no faults.
class IntervalPartition {
 public:
  std::size_t size() const noexcept { return masses_.size(); }

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  bool fault_free() const noexcept { return fault_free_; }

  // 0-based interval access: interval i spans [lower(i), upper(i)].
  double lower(std::size_t i) const { return breakpoints_.at(i); }
  double upper(std::size_t i) const { return breakpoints_.at(i + 1); }
  double mass(std::size_t i) const { return masses_.at(i); }

  // Lowest 0-based interval whose closure contains x.
  std::size_t locate(double x) const;

 private:
  friend IntervalPartition validate_partition(std::vector<double>, std::vector<double>, bool);
  friend IntervalPartition refine_partition(const IntervalPartition&, int, std::size_t);

  IntervalPartition(std::vector<double> breakpoints, std::vector<double> masses, bool fault_free)
      : breakpoints_(std::move(breakpoints)), masses_(std::move(masses)), fault_free_(fault_free) {}

  std::vector<double> breakpoints_;
  std::vector<double> masses_;
  bool fault_free_ = false;
};

/// Validates raw lists. For fault-free partitions the zero point y_1 may be
/// given explicitly (breakpoints.size() == masses.size() + 1, with y_1 == 0)
/// or left implicit (breakpoints.size() == masses.size()).
IntervalPartition validate_partition(std::vector<double> breakpoints, std::vector<double> masses,
                                     bool fault_free = false);

/// Masses equal to interval lengths, so the uniform prior is feasible.
IntervalPartition uniform_consistent_partition(const std::vector<double>& breakpoints);

/// Splits every interval into `factor` equal pieces with proportional masses.
/// The fault-free point interval is kept whole.
IntervalPartition refine_partition(const IntervalPartition& partition, int factor,
                                   std::size_t max_intervals = kDefaultRefinementCap);

struct Observation {
  double r = 0.0;  // failures
  double k = 0.0;  // successes
};

void validate_observation(const Observation& obs, bool require_integer = false);

struct ReliabilityTarget {
  int m = 1;
  std::optional<double> alpha;
};

void validate_target(const ReliabilityTarget& target);

struct Placement {
  std::vector<double> positions;
};

// Checks y_{i-1} <= x_i <= y_i for every interval.
void validate_placement(const IntervalPartition& partition, const Placement& placement);

}  // namespace cbi

#endif  // CBI_MODEL_HPP

// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_ORACLE_HPP
#define CBI_ORACLE_HPP

#include <optional>
#include <vector>

#include "cbi/model.hpp"

namespace cbi {

/// STANDARD scores m failure-free future demands; CAPPED accepts at most l
/// failures among them.
struct ObjectiveKind {
  enum class Tag { STANDARD, CAPPED };
  Tag tag = Tag::STANDARD;
  std::optional<int> l;

  static ObjectiveKind standard() { return {}; }
  static ObjectiveKind capped(int l) { return {Tag::CAPPED, l}; }
};

struct GridOptions {
  int density = 2000;  // points per interval per round
  int levels = 3;      // refinement rounds after the corner-restart round
  double shrink = 50.0;
};

inline constexpr std::size_t kGridMaxIntervals = 6;
inline constexpr int kGridMinDensity = 50;
inline constexpr int kGridMaxDensity = 1000000;

struct GridResult {
  double phi_hat = 1.0;
  Placement placement;
  std::vector<double> level_values;  // best value after each round, base round first
};

/// Brute-force minimiser of the reduced objective by coordinate descent over
/// per-interval grids, restarted from every endpoint corner and then refined
/// around the best point.
GridResult grid_minimize(const IntervalPartition& partition, const ObjectiveKind& kind, double r,
                         double k, int m, const GridOptions& options = {});

/// prod_{i=1..m} (k+i)/(r+k+1+i): posterior predictive probability of m
/// failure-free demands under a uniform prior.
double beta_predictive(int m, double k, double r);

}  // namespace cbi

#endif  // CBI_ORACLE_HPP

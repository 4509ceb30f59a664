// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_PLANNER_HPP
#define CBI_PLANNER_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cbi/model.hpp"
#include "cbi/solver.hpp"

namespace cbi {

inline constexpr std::int64_t kCbiBracketCap = 1000000000;

enum class PlanStatus { FEASIBLE, INFEASIBLE, INFEASIBLE_NUMERIC };

std::string_view to_string(PlanStatus status) noexcept;

/// Smallest success count k reaching phi >= 1 - alpha. total_demands = k + r.
struct PlanResult {
  PlanStatus status = PlanStatus::INFEASIBLE;
  std::optional<std::int64_t> k_required;
  std::int64_t total_demands = 0;
  bool feasible = false;
  double phi_at_k = 0.0;
  // phi(k-1) < 1 - alpha <= phi(k) and phi(k-1) <= phi(k), rechecked by direct solves.
  bool boundary_verified = false;
};

PlanResult plan_demands_beta(int m, double alpha, std::int64_t r);

PlanResult plan_demands_cbi(const IntervalPartition& partition, int m, double alpha,
                            std::int64_t r, const SolverOptions& options = {});

/// Conservative phi at success count k, including k = 0.
double conservative_phi(const IntervalPartition& partition, double r, double k, int m,
                        const SolverOptions& options = {});

struct RatioPoint {
  std::int64_t r = 0;
  std::int64_t beta_total = 0;
  std::optional<std::int64_t> cbi_total;
  std::optional<double> ratio;
  bool feasible = false;
};

std::vector<RatioPoint> ratio_curve(const IntervalPartition& partition, int m, double alpha,
                                    const std::vector<std::int64_t>& r_list);

struct StationaryPoint {
  std::int64_t r = 0;
  std::optional<std::int64_t> k_c;
  double y_star = 0.0;
  std::optional<double> y_star_star;
  double pole = 0.0;
  double x_star_limit = 0.0;
  bool feasible = false;
};

std::vector<StationaryPoint> stationary_convergence_curve(const IntervalPartition& partition,
                                                          int m, double alpha,
                                                          const std::vector<std::int64_t>& r_list);

enum class LimitTrack { TRACKS_POLE, TRACKS_XSTAR };

std::string_view to_string(LimitTrack track) noexcept;

/// Large-r limits. Without a pole limit only the closed forms are filled;
/// given the limit of r/(r+k), y_star_limit and the y** descriptor follow the
/// ordering of that limit against x_star.
struct AsymptoticLimits {
  double kbeta_over_r = 0.0;
  double x_star = 0.0;  // 1 - (1-alpha)^(1/m)
  double y_star_limit = 0.0;
  LimitTrack y_star_star_track = LimitTrack::TRACKS_POLE;
  std::optional<double> y_star_star_limit;
};

AsymptoticLimits asymptotic_limits(int m, double alpha,
                                   std::optional<double> pole_limit = std::nullopt);

struct PhiGrowthPoint {
  double k = 0.0;
  double phi_star = 0.0;
};

std::vector<PhiGrowthPoint> phi_growth_curve(const IntervalPartition& partition, double r, int m,
                                             const std::vector<double>& k_list);

/// Limit of phi* as k grows (the supremum over k).
double phi_growth_limit(const IntervalPartition& partition, double r, int m);

}  // namespace cbi

#endif  // CBI_PLANNER_HPP

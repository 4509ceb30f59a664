// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi/planner.hpp"

#include <cmath>
#include <functional>

#include "cbi/error.hpp"
#include "cbi/logspace.hpp"
#include "cbi/oracle.hpp"

namespace cbi {
namespace {

void check_plan_inputs(int m, double alpha, std::int64_t r) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
  validate_target({m, alpha});
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "r must be >= 0");
}

// Smallest k in (lo, hi] with reaches(k), given !reaches(lo) and reaches(hi).
std::int64_t bisect_integer(std::int64_t lo, std::int64_t hi,
                            const std::function<bool(std::int64_t)>& reaches) {
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (reaches(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

PlanResult feasible_plan(std::int64_t k, std::int64_t r, double target,
                         const std::function<double(std::int64_t)>& phi) {
  PlanResult out;
  out.status = PlanStatus::FEASIBLE;
  out.feasible = true;
  out.k_required = k;
  out.total_demands = k + r;
  out.phi_at_k = phi(k);
  out.boundary_verified = out.phi_at_k >= target;
  if (k > 0) {
    const double before = phi(k - 1);
    out.boundary_verified = out.boundary_verified && before < target && before <= out.phi_at_k;
  }
  return out;
}

}  // namespace

std::string_view to_string(PlanStatus status) noexcept {
  switch (status) {
    case PlanStatus::FEASIBLE: return "FEASIBLE";
    case PlanStatus::INFEASIBLE: return "INFEASIBLE";
    case PlanStatus::INFEASIBLE_NUMERIC: return "INFEASIBLE_NUMERIC";
  }
  return "UNKNOWN";
}

std::string_view to_string(LimitTrack track) noexcept {
  return track == LimitTrack::TRACKS_POLE ? "TRACKS_POLE" : "TRACKS_XSTAR";
}

PlanResult plan_demands_beta(int m, double alpha, std::int64_t r) {
  check_plan_inputs(m, alpha, r);
  const double target = 1.0 - alpha;
  const auto rr = static_cast<double>(r);
  auto phi = [&](std::int64_t k) { return beta_predictive(m, static_cast<double>(k), rr); };
  auto reaches = [&](std::int64_t k) { return phi(k) >= target; };
  if (reaches(0)) return feasible_plan(0, r, target, phi);
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  while (!reaches(hi)) {
    lo = hi;
    hi *= 2;
  }
  return feasible_plan(bisect_integer(lo, hi, reaches), r, target, phi);
}

double conservative_phi(const IntervalPartition& partition, double r, double k, int m,
                        const SolverOptions& options) {
  if (k == 0.0) {
    if (r > 0.0) return 0.0;
    double phi = 0.0;
    for (std::size_t i = 0; i < partition.size(); ++i) {
      phi += partition.mass(i) * logspace::pow1m(partition.upper(i), m);
    }
    return phi;
  }
  return require_converged(solve(partition, r, k, m, options)).phi_star;
}

PlanResult plan_demands_cbi(const IntervalPartition& partition, int m, double alpha,
                            std::int64_t r, const SolverOptions& options) {
  check_plan_inputs(m, alpha, r);
  const double target = 1.0 - alpha;
  const auto rr = static_cast<double>(r);
  PlanResult out;
  if (phi_supremum(partition, rr, m) <= target) {
    out.status = PlanStatus::INFEASIBLE;
    return out;
  }
  auto phi = [&](std::int64_t k) {
    return conservative_phi(partition, rr, static_cast<double>(k), m, options);
  };
  auto reaches = [&](std::int64_t k) { return phi(k) >= target; };
  if (reaches(0)) return feasible_plan(0, r, target, phi);
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  while (!reaches(hi)) {
    if (hi >= kCbiBracketCap) {
      out.status = PlanStatus::INFEASIBLE_NUMERIC;
      return out;
    }
    lo = hi;
    hi = std::min(hi * 2, kCbiBracketCap);
  }
  return feasible_plan(bisect_integer(lo, hi, reaches), r, target, phi);
}

std::vector<RatioPoint> ratio_curve(const IntervalPartition& partition, int m, double alpha,
                                    const std::vector<std::int64_t>& r_list) {
  std::vector<RatioPoint> out;
  for (std::int64_t r : r_list) {
    RatioPoint p;
    p.r = r;
    p.beta_total = plan_demands_beta(m, alpha, r).total_demands;
    const PlanResult cbi = plan_demands_cbi(partition, m, alpha, r);
    p.feasible = cbi.feasible;
    if (cbi.feasible) {
      p.cbi_total = cbi.total_demands;
      p.ratio = static_cast<double>(p.beta_total) / static_cast<double>(cbi.total_demands);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<StationaryPoint> stationary_convergence_curve(const IntervalPartition& partition,
                                                          int m, double alpha,
                                                          const std::vector<std::int64_t>& r_list) {
  const double x_star = asymptotic_limits(m, alpha).x_star;
  std::vector<StationaryPoint> out;
  for (std::int64_t r : r_list) {
    StationaryPoint p;
    p.r = r;
    p.x_star_limit = x_star;
    const PlanResult plan = plan_demands_cbi(partition, m, alpha, r);
    p.feasible = plan.feasible && *plan.k_required > 0;
    if (p.feasible) {
      const auto k = static_cast<double>(*plan.k_required);
      const auto rr = static_cast<double>(r);
      const FixedPointSolution s = require_converged(solve(partition, rr, k, m));
      p.k_c = plan.k_required;
      p.y_star = s.y_star;
      p.y_star_star = s.y_star_star;
      p.pole = rr / (rr + k);
    }
    out.push_back(p);
  }
  return out;
}

AsymptoticLimits asymptotic_limits(int m, double alpha, std::optional<double> pole_limit) {
  check_plan_inputs(m, alpha, 0);
  const double log_root = std::log1p(-alpha) / m;  // log((1-alpha)^(1/m))
  AsymptoticLimits out;
  out.x_star = -std::expm1(log_root);
  out.kbeta_over_r = std::exp(log_root) / out.x_star;
  out.y_star_limit = out.x_star;
  if (pole_limit) {
    const double bar = *pole_limit;
    if (!(bar >= 0.0 && bar <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "pole limit must lie in [0, 1]");
    }
    if (bar < out.x_star) {
      out.y_star_star_track = LimitTrack::TRACKS_POLE;
      out.y_star_star_limit = bar;
    } else {
      out.y_star_star_track = LimitTrack::TRACKS_XSTAR;
      out.y_star_star_limit = out.x_star;
      out.y_star_limit = bar;
    }
  }
  return out;
}

std::vector<PhiGrowthPoint> phi_growth_curve(const IntervalPartition& partition, double r, int m,
                                             const std::vector<double>& k_list) {
  std::vector<PhiGrowthPoint> out;
  for (double k : k_list) out.push_back({k, conservative_phi(partition, r, k, m)});
  return out;
}

double phi_growth_limit(const IntervalPartition& partition, double r, int m) {
  return phi_supremum(partition, r, m);
}

}  // namespace cbi

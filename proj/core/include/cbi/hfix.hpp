// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_HFIX_HPP
#define CBI_HFIX_HPP

#include <optional>
#include <utility>

namespace cbi {

/// Parameters of h(x) = (1-x)^m (r - x(m+k+r)) / (r - x(k+r)).
struct HContext {
  int m = 1;
  double k = 0.0;
  double r = 0.0;
  double pole = 0.0;        // r / (r+k); meaningless when degenerate
  double lower_zero = 0.0;  // r / (r+m+k)
  bool degenerate = false;  // r == k == 0
};

HContext make_hcontext(int m, double k, double r);

// Relative half-width of the excluded band around the pole.
inline constexpr double kPoleGuard = 1e-14;
inline constexpr int kBisectionCap = 200;

double h_eval(const HContext& ctx, double x);

struct UpperInverse {
  double x = 1.0;
  bool boundary = false;  // x sits on a branch endpoint (0 for r == 0, or 1)
};

/// Solves h(x) = phi on the decreasing branch (pole, 1]; (0, 1] when r == 0.
UpperInverse h_invert_upper(const HContext& ctx, double phi);

/// Solves h(x) = phi on [0, lower_zero]. Requires r > 0.
double h_invert_lower(const HContext& ctx, double phi);

/// Variants taking log(phi), for fixed points below the normal double range.
UpperInverse h_invert_upper_log(const HContext& ctx, double log_phi);
double h_invert_lower_log(const HContext& ctx, double log_phi);

/// Real roots of dh/dx = 0 as (lower, higher), or nullopt when the
/// discriminant is negative. Requires r > 0 and k > 0.
std::optional<std::pair<double, double>> h_stationary_points(const HContext& ctx);

/// The x* in (pole, 1] with h(x*) = 1. Requires r > 0.
double h_unit_crossing(const HContext& ctx);

}  // namespace cbi

#endif  // CBI_HFIX_HPP

// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi/hfix.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cbi/error.hpp"
#include "cbi/logspace.hpp"

namespace cbi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_pole_band(const HContext& ctx, double x) {
  return std::fabs(x - ctx.pole) <= kPoleGuard * ctx.pole;
}

// h without argument checks; +inf inside the pole band (the upper branch limit).
double h_raw(const HContext& ctx, double x) {
  if (ctx.r == 0.0) {
    const double scale = (ctx.m + ctx.k) / ctx.k;
    return x == 0.0 ? scale : logspace::pow1m(x, ctx.m) * scale;
  }
  if (x == 0.0) return 1.0;
  if (x == ctx.lower_zero) return 0.0;
  if (in_pole_band(ctx, x)) return kInf;
  const double ratio = (ctx.r + ctx.m + ctx.k) / (ctx.r + ctx.k);
  return logspace::pow1m(x, ctx.m) * ratio * ((ctx.lower_zero - x) / (ctx.pole - x));
}

// log|h| off the band [lower_zero, pole]; +inf inside the pole band.
double log_h_raw(const HContext& ctx, double x) {
  if (ctx.r == 0.0) {
    return logspace::log_pow1m(x, ctx.m) + std::log((ctx.m + ctx.k) / ctx.k);
  }
  if (x == 0.0) return 0.0;
  if (x == ctx.lower_zero) return -kInf;
  if (in_pole_band(ctx, x)) return kInf;
  const double ratio = (ctx.r + ctx.m + ctx.k) / (ctx.r + ctx.k);
  return logspace::log_pow1m(x, ctx.m) + std::log(ratio) +
         std::log((ctx.lower_zero - x) / (ctx.pole - x));
}

// Bisection on a decreasing function with f(lo) >= phi >= f(hi). Runs until the
// bracket holds adjacent doubles, then returns the closer endpoint.
template <class F>
double bisect_decreasing(F&& f, double lo, double hi, double phi) {
  for (int it = 0; it < kBisectionCap; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > phi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double flo = f(lo);
  const double fhi = f(hi);
  return std::fabs(flo - phi) < std::fabs(fhi - phi) ? lo : hi;
}

void require_valid(const HContext& ctx) {
  if (ctx.degenerate) throw Error(ErrorCode::DegenerateContext, "r = k = 0 leaves h undefined");
}

}  // namespace

HContext make_hcontext(int m, double k, double r) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (!(k >= 0.0) || !(r >= 0.0) || !std::isfinite(k) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidArgument, "k and r must be finite and nonnegative");
  }
  HContext ctx{m, k, r, 0.0, 0.0, false};
  if (r == 0.0 && k == 0.0) {
    ctx.degenerate = true;
    ctx.pole = std::numeric_limits<double>::quiet_NaN();
    return ctx;
  }
  ctx.pole = r / (r + k);
  ctx.lower_zero = r / (r + m + k);
  return ctx;
}

double h_eval(const HContext& ctx, double x) {
  require_valid(ctx);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "x must lie in [0, 1]");
  }
  if (ctx.r > 0.0 && in_pole_band(ctx, x)) {
    throw Error(ErrorCode::PoleEvaluation, "x = " + std::to_string(x) + " is at the pole");
  }
  return h_raw(ctx, x);
}

UpperInverse h_invert_upper(const HContext& ctx, double phi) {
  require_valid(ctx);
  if (ctx.r > 0.0 && ctx.k == 0.0) {
    throw Error(ErrorCode::DegenerateContext, "upper branch is empty when k = 0");
  }
  if (!(phi > 0.0)) throw Error(ErrorCode::OutOfBranchRange, "phi must be positive");
  // Start just outside the guard band; roots closer to the pole are not
  // representable as evaluable points.
  double lo = std::nextafter(ctx.pole * (1.0 + kPoleGuard), 2.0);
  if (ctx.r == 0.0) {
    const double sup = (ctx.m + ctx.k) / ctx.k;
    if (phi > sup) throw Error(ErrorCode::OutOfBranchRange, "phi exceeds (m+k)/k");
    if (phi == sup) return {0.0, true};
    lo = 0.0;
  } else if (!std::isfinite(phi)) {
    throw Error(ErrorCode::OutOfBranchRange, "phi must be finite");
  }
  if (lo >= 1.0) return {1.0, true};
  const double x = bisect_decreasing([&](double v) { return h_raw(ctx, v); }, lo, 1.0, phi);
  return {x, x == 1.0 || x == 0.0};
}

double h_invert_lower(const HContext& ctx, double phi) {
  require_valid(ctx);
  if (ctx.r == 0.0) throw Error(ErrorCode::DegenerateContext, "lower branch needs r > 0");
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw Error(ErrorCode::OutOfBranchRange, "phi must lie in [0, 1]");
  }
  if (phi == 1.0) return 0.0;
  if (phi == 0.0) return ctx.lower_zero;
  const double x =
      bisect_decreasing([&](double v) { return h_raw(ctx, v); }, 0.0, ctx.lower_zero, phi);
  // h(lower_zero) = 0 < phi, so the root lies strictly below lower_zero.
  return x < ctx.lower_zero ? x : std::nextafter(ctx.lower_zero, 0.0);
}

std::optional<std::pair<double, double>> h_stationary_points(const HContext& ctx) {
  require_valid(ctx);
  if (ctx.r == 0.0) throw Error(ErrorCode::DegenerateContext, "stationary points need r > 0");
  if (ctx.k == 0.0) throw Error(ErrorCode::DegenerateContext, "stationary points need k > 0");
  const double r = ctx.r;
  const double k = ctx.k;
  const double m = ctx.m;
  const double disc = -4.0 * r * k * k - 4.0 * k * r * (m + r) + r * r * (m - 1.0) * (m - 1.0);
  if (disc < 0.0) return std::nullopt;
  const double a = (r + k) * (r + m + k);
  const double b = 2.0 * r * r + (2.0 * k + m + 1.0) * r;
  const double root = std::sqrt(disc);
  const double hi = (b + root) / (2.0 * a);
  // The roots multiply to r(r+1)/a; dividing avoids cancellation in b - root.
  const double lo = 2.0 * r * (r + 1.0) / (b + root);
  if (!(lo > ctx.lower_zero && hi < ctx.pole && lo <= hi)) {
    throw Error(ErrorCode::InconsistentSolution, "stationary points fall outside (lower_zero, pole)");
  }
  return std::make_pair(lo, hi);
}

double h_unit_crossing(const HContext& ctx) {
  require_valid(ctx);
  if (ctx.r == 0.0) throw Error(ErrorCode::DegenerateContext, "unit crossing needs r > 0");
  // Log domain: (1-x)^m can underflow across the whole upper branch.
  return h_invert_upper_log(ctx, 0.0).x;
}

UpperInverse h_invert_upper_log(const HContext& ctx, double log_phi) {
  require_valid(ctx);
  if (ctx.r > 0.0 && ctx.k == 0.0) {
    throw Error(ErrorCode::DegenerateContext, "upper branch is empty when k = 0");
  }
  if (std::isnan(log_phi) || log_phi == -kInf) {
    throw Error(ErrorCode::OutOfBranchRange, "phi must be positive");
  }
  double lo = std::nextafter(ctx.pole * (1.0 + kPoleGuard), 2.0);
  if (ctx.r == 0.0) {
    const double sup = std::log((ctx.m + ctx.k) / ctx.k);
    if (log_phi > sup) throw Error(ErrorCode::OutOfBranchRange, "phi exceeds (m+k)/k");
    lo = 0.0;
  }
  if (lo >= 1.0) return {1.0, true};
  const double x =
      bisect_decreasing([&](double v) { return log_h_raw(ctx, v); }, lo, 1.0, log_phi);
  return {x, x == 1.0 || x == 0.0};
}

double h_invert_lower_log(const HContext& ctx, double log_phi) {
  require_valid(ctx);
  if (ctx.r == 0.0) throw Error(ErrorCode::DegenerateContext, "lower branch needs r > 0");
  if (!(log_phi <= 0.0)) throw Error(ErrorCode::OutOfBranchRange, "phi must lie in [0, 1]");
  if (log_phi == 0.0) return 0.0;
  if (log_phi == -kInf) return ctx.lower_zero;
  const double x =
      bisect_decreasing([&](double v) { return log_h_raw(ctx, v); }, 0.0, ctx.lower_zero, log_phi);
  return x < ctx.lower_zero ? x : std::nextafter(ctx.lower_zero, 0.0);
}

}  // namespace cbi

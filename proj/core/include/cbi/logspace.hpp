// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_LOGSPACE_HPP
#define CBI_LOGSPACE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace cbi::logspace {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)); -inf is the additive identity.
inline double add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log(sum_i exp(terms[i])). Returns -inf for an empty span or all -inf terms.
inline double sum(std::span<const double> terms) noexcept {
  if (terms.empty()) return kNegInf;
  const double hi = *std::max_element(terms.begin(), terms.end());
  if (hi == kNegInf) return kNegInf;
  if (terms.size() == 1) return hi;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

// log((1 - x)^n) for x in [0, 1]. n == 0 gives 0 (x^0 == 1 convention).
inline double log_pow1m(double x, double n) noexcept {
  if (n == 0.0) return 0.0;
  if (x >= 1.0) return kNegInf;
  return n * std::log1p(-x);
}

// log(x^n) with 0^0 == 1.
inline double log_pow(double x, double n) noexcept {
  if (n == 0.0) return 0.0;
  if (x <= 0.0) return kNegInf;
  return n * std::log(x);
}

// (1 - x)^n evaluated through log1p so that tiny x keeps its precision.
inline double pow1m(double x, double n) noexcept {
  const double l = log_pow1m(x, n);
  return l == kNegInf ? 0.0 : std::exp(l);
}

/// Value carried as sign * exp(log_abs). Comparisons never leave log space,
/// so magnitudes far below the double range still order correctly.
struct SignedLog {
  int sign = 0;  // -1, 0 or +1
  double log_abs = kNegInf;

  static SignedLog zero() noexcept { return {}; }
};

inline bool operator<(const SignedLog& a, const SignedLog& b) noexcept {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign == 0) return false;
  return a.sign > 0 ? a.log_abs < b.log_abs : a.log_abs > b.log_abs;
}

}  // namespace cbi::logspace

#endif  // CBI_LOGSPACE_HPP

// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cbi/error.hpp"
#include "cbi/logspace.hpp"

namespace cbi {
namespace {

using logspace::kNegInf;

constexpr int kMaxSweeps = 1000;
constexpr int kProductLoopLimit = 100000;

struct Grid {
  std::vector<double> x;
  std::vector<double> a;   // log(x^r (1-x)^k)
  std::vector<double> ea;  // exp(a - amax)
  std::vector<double> e;   // future-demand factor, (1-x)^m for STANDARD
  double amax = kNegInf;
};

class Problem {
 public:
  Problem(const IntervalPartition& partition, const ObjectiveKind& kind, double r, double k, int m)
      : part_(partition), kind_(kind), r_(r), k_(k), m_(m) {
    if (kind.tag == ObjectiveKind::Tag::CAPPED) {
      lfact_m_ = std::lgamma(m + 1.0);
    }
  }

  std::size_t size() const { return part_.size(); }
  double lower(std::size_t i) const { return part_.lower(i); }
  double upper(std::size_t i) const { return part_.upper(i); }

  double log_tail(double x) const {
    const double standard = logspace::log_pow1m(x, m_);
    if (kind_.tag == ObjectiveKind::Tag::STANDARD || *kind_.l == 0) return standard;
    std::vector<double> terms{standard};
    for (int s = 1; s <= *kind_.l; ++s) {
      const double lchoose = lfact_m_ - std::lgamma(s + 1.0) - std::lgamma(m_ - s + 1.0);
      terms.push_back(lchoose + logspace::log_pow(x, s) + logspace::log_pow1m(x, m_ - s));
    }
    return logspace::sum(terms);
  }

  Grid make_grid(std::vector<double> xs) const {
    Grid g;
    g.x = std::move(xs);
    for (double x : g.x) {
      const double a = logspace::log_pow(x, r_) + logspace::log_pow1m(x, k_);
      g.a.push_back(a);
      g.amax = std::max(g.amax, a);
      const double t = log_tail(x);
      g.e.push_back(t == kNegInf ? 0.0 : std::exp(t));
    }
    for (double a : g.a) g.ea.push_back(g.amax == kNegInf ? 0.0 : std::exp(a - g.amax));
    return g;
  }

  double mass(std::size_t i) const { return part_.mass(i); }

 private:
  const IntervalPartition& part_;
  ObjectiveKind kind_;
  double r_;
  double k_;
  int m_;
  double lfact_m_ = 0.0;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Objective for the placement idx over grids, optionally sweeping interval i
// over its whole grid. Returns the value; on sweep also returns the best index.
class Descent {
 public:
  Descent(const Problem& problem, const std::vector<Grid>& grids)
      : problem_(problem), grids_(grids) {}

  double value(const std::vector<std::size_t>& idx) const {
    double shift = kNegInf;
    for (std::size_t j = 0; j < idx.size(); ++j) shift = std::max(shift, grids_[j].a[idx[j]]);
    if (shift == kNegInf) return kInf;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const double a = grids_[j].a[idx[j]];
      if (a == kNegInf) continue;
      const double d = problem_.mass(j) * std::exp(a - shift);
      den += d;
      num += d * grids_[j].e[idx[j]];
    }
    return num / den;
  }

  // Best grid index for coordinate i with the others held fixed. The current
  // index is kept unless another point is strictly better.
  std::size_t sweep(const std::vector<std::size_t>& idx, std::size_t i) const {
    const Grid& gi = grids_[i];
    double shift = gi.amax;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (j != i) shift = std::max(shift, grids_[j].a[idx[j]]);
    }
    if (shift == kNegInf) return idx[i];
    double num_rest = 0.0;
    double den_rest = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (j == i) continue;
      const double a = grids_[j].a[idx[j]];
      if (a == kNegInf) continue;
      const double d = problem_.mass(j) * std::exp(a - shift);
      den_rest += d;
      num_rest += d * grids_[j].e[idx[j]];
    }
    const double scale = gi.amax == kNegInf ? 0.0 : problem_.mass(i) * std::exp(gi.amax - shift);
    auto eval = [&](std::size_t c) {
      const double d = scale * gi.ea[c];
      const double den = den_rest + d;
      return den > 0.0 ? (num_rest + d * gi.e[c]) / den : kInf;
    };
    std::size_t best = idx[i];
    double best_v = eval(best);
    for (std::size_t c = 0; c < gi.x.size(); ++c) {
      const double v = eval(c);
      if (v < best_v) {
        best_v = v;
        best = c;
      }
    }
    return best;
  }

  double run(std::vector<std::size_t>& idx) const {
    for (int s = 0; s < kMaxSweeps; ++s) {
      bool moved = false;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t next = sweep(idx, i);
        if (next != idx[i]) {
          idx[i] = next;
          moved = true;
        }
      }
      if (!moved) break;
    }
    return value(idx);
  }

 private:
  const Problem& problem_;
  const std::vector<Grid>& grids_;
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs;
  if (lo == hi) return {lo};
  for (int j = 0; j < count; ++j) {
    xs.push_back(j == count - 1 ? hi : lo + (hi - lo) * j / (count - 1));
  }
  return xs;
}

std::size_t index_of(const std::vector<double>& xs, double x) {
  return static_cast<std::size_t>(std::find(xs.begin(), xs.end(), x) - xs.begin());
}

}  // namespace

GridResult grid_minimize(const IntervalPartition& partition, const ObjectiveKind& kind, double r,
                         double k, int m, const GridOptions& options) {
  const std::size_t n = partition.size();
  if (n > kGridMaxIntervals) {
    throw Error(ErrorCode::CostGuard, std::to_string(n) + " intervals exceed the oracle limit");
  }
  if (options.density < kGridMinDensity || options.density > kGridMaxDensity) {
    throw Error(ErrorCode::CostGuard, "grid density out of range");
  }
  if (options.levels < 1 || !(options.shrink > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "levels must be >= 1 and shrink > 1");
  }
  if (m < 1 || !(r >= 0.0) || !(k >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "invalid observation or target");
  }
  if (kind.tag == ObjectiveKind::Tag::CAPPED) {
    if (!kind.l || *kind.l < 0 || *kind.l >= m) {
      throw Error(ErrorCode::InvalidArgument, "capped objective needs 0 <= l < m");
    }
  } else if (kind.l) {
    throw Error(ErrorCode::InvalidArgument, "standard objective takes no l");
  }

  const Problem problem(partition, kind, r, k, m);
  std::vector<Grid> grids;
  for (std::size_t i = 0; i < n; ++i) {
    grids.push_back(problem.make_grid(linspace(partition.lower(i), partition.upper(i), options.density)));
  }

  GridResult result;
  result.phi_hat = kInf;
  std::vector<double> best_x(n, 0.0);
  {
    const Descent descent(problem, grids);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = (mask >> i) & 1U ? grids[i].x.size() - 1 : 0;
      const double v = descent.run(idx);
      if (v < result.phi_hat) {
        result.phi_hat = v;
        for (std::size_t i = 0; i < n; ++i) best_x[i] = grids[i].x[idx[i]];
      }
    }
  }
  result.level_values.push_back(result.phi_hat);

  double window = 1.0;
  for (int level = 1; level <= options.levels; ++level) {
    window /= options.shrink;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = partition.lower(i);
      const double hi = partition.upper(i);
      const double half = 0.5 * (hi - lo) * window;
      std::vector<double> xs =
          linspace(std::max(lo, best_x[i] - half), std::min(hi, best_x[i] + half), options.density);
      xs.push_back(best_x[i]);
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      idx[i] = index_of(xs, best_x[i]);
      grids[i] = problem.make_grid(std::move(xs));
    }
    const Descent descent(problem, grids);
    const double v = descent.run(idx);
    if (v < result.phi_hat) {
      result.phi_hat = v;
      for (std::size_t i = 0; i < n; ++i) best_x[i] = grids[i].x[idx[i]];
    }
    result.level_values.push_back(result.phi_hat);
  }
  result.placement.positions = best_x;
  return result;
}

double beta_predictive(int m, double k, double r) {
  if (m < 1 || !(k >= 0.0) || !(r >= 0.0) || !std::isfinite(k) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidArgument, "beta_predictive needs m >= 1 and k, r >= 0");
  }
  if (m <= kProductLoopLimit) {
    double s = 0.0;
    for (int i = 1; i <= m; ++i) s += std::log1p(-(r + 1.0) / (r + k + 1.0 + i));
    return std::exp(s);
  }
  const double num = std::lgamma(k + m + 1.0) - std::lgamma(k + 1.0);
  const double den = std::lgamma(r + k + m + 2.0) - std::lgamma(r + k + 2.0);
  return std::exp(num - den);
}

}  // namespace cbi

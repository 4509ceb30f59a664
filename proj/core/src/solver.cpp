// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cbi/hfix.hpp"
#include "cbi/logspace.hpp"

namespace cbi {
namespace {

using logspace::kNegInf;
using logspace::SignedLog;

// Largest |phi* - last iterate| accepted when assembling the final placement.
constexpr double kConsistencyTol = 1e-10;

void check_options(const SolverOptions& options) {
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "tol must be positive and max_iter >= 1");
  }
  if (!(options.start > 0.0 && options.start <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "start must lie in (0, 1]");
  }
}

class Engine {
 public:
  Engine(const IntervalPartition& partition, double r, double k, int m)
      : part_(partition), ctx_(make_hcontext(m, k, r)), pinned_(pinned_intervals(partition, r)) {}

  const HContext& ctx() const { return ctx_; }
  std::size_t pinned() const { return static_cast<std::size_t>(pinned_); }

  double objective(const std::vector<double>& xs) const {
    return weighted_objective(xs, part_.masses(), ctx_.r, ctx_.k, ctx_.m);
  }

  // log of the objective; finite where the linear value underflows.
  double log_objective(const std::vector<double>& xs) const {
    std::vector<double> num;
    std::vector<double> den;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double t = std::log(part_.mass(i)) + logspace::log_pow(xs[i], ctx_.r) +
                       logspace::log_pow1m(xs[i], ctx_.k);
      den.push_back(t);
      num.push_back(t + logspace::log_pow1m(xs[i], ctx_.m));
    }
    return logspace::sum(num) - logspace::sum(den);
  }

  // p x^r (1-x)^k ((1-x)^m - phi) in signed-log form.
  SignedLog q(std::size_t i, double x, double phi) const {
    const double t = logspace::log_pow(x, ctx_.r) + logspace::log_pow1m(x, ctx_.k);
    if (t == kNegInf) return SignedLog::zero();
    // log|(1-x)^m - phi| without cancellation when (1-x)^m is close to phi.
    const double lm = logspace::log_pow1m(x, ctx_.m);
    const double base = std::log(part_.mass(i)) + t;
    if (!(phi > 0.0)) return {1, base + lm};
    const double u = lm - std::log(phi);
    if (u == 0.0) return SignedLog::zero();
    if (u > 0.0) return {1, base + lm + std::log(-std::expm1(-u))};
    return {-1, base + std::log(phi) + std::log(-std::expm1(u))};
  }

  // One parametric step: per-interval minimiser of q among the endpoints and
  // the upper-branch solution y of h(y) = phi. Lower endpoint wins ties.
  std::vector<double> step(double phi) const {
    const double y_up = phi > 0.0 ? h_invert_upper(ctx_, phi).x : 1.0;
    std::vector<double> xs(part_.size(), 0.0);
    for (std::size_t i = pinned(); i < part_.size(); ++i) {
      const double lo = part_.lower(i);
      const double hi = part_.upper(i);
      double best = lo;
      SignedLog best_q = q(i, lo, phi);
      auto consider = [&](double x) {
        const SignedLog v = q(i, x, phi);
        if (v < best_q) {
          best = x;
          best_q = v;
        }
      };
      if (y_up > lo && y_up < hi) consider(y_up);
      consider(hi);
      xs[i] = best;
    }
    return xs;
  }

  // Sign of sum_i q_i(x_i, phi): negative exactly when phi lies above the
  // ratio attained at the minimiser.
  int parametric_sign(const std::vector<double>& xs, double phi) const {
    std::vector<double> pos;
    std::vector<double> neg;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const SignedLog v = q(i, xs[i], phi);
      if (v.sign > 0) pos.push_back(v.log_abs);
      if (v.sign < 0) neg.push_back(v.log_abs);
    }
    const double lp = logspace::sum(pos);
    const double ln = logspace::sum(neg);
    return lp > ln ? 1 : (lp < ln ? -1 : 0);
  }

  // Placement with the structure of the conservative prior. J1 and J2 are
  // 0-based; lower_pick selects y_{j1-1} for interval J1.
  std::vector<double> structured(std::size_t j1, std::size_t j2, double y_star,
                                 bool lower_pick) const {
    std::vector<double> xs(part_.size(), 0.0);
    for (std::size_t i = pinned(); i < part_.size(); ++i) {
      if (i < j1) {
        xs[i] = part_.lower(i);
      } else if (i == j1) {
        xs[i] = lower_pick ? part_.lower(i) : (j1 == j2 ? y_star : part_.upper(i));
      } else if (i < j2) {
        xs[i] = part_.upper(i);
      } else if (i == j2) {
        xs[i] = y_star;
      } else {
        xs[i] = part_.lower(i);
      }
    }
    return xs;
  }

  // No-failure structure: upper endpoints below J, y* in J, lower above.
  std::vector<double> structured_no_failure(std::size_t j, double y_star) const {
    std::vector<double> xs(part_.size(), 0.0);
    for (std::size_t i = 0; i < part_.size(); ++i) {
      xs[i] = i < j ? part_.upper(i) : (i == j ? y_star : part_.lower(i));
    }
    return xs;
  }

 private:
  const IntervalPartition& part_;
  HContext ctx_;
  int pinned_;
};

struct IterationResult {
  double phi = 1.0;
  double last_step = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> xs;
};

// Parametric iteration on phi. Each step minimises sum_i q_i(x, phi); the
// ratio at the minimiser is an upper bound on phi*, and the sign of the
// minimum tells which side of phi* the trial value lies. Dinkelbach updates
// are used while they at least halve the bracket, bisection otherwise.
IterationResult iterate(const Engine& engine, const SolverOptions& options, IterateTrace* trace) {
  IterationResult out;
  double lo = 0.0;
  double hi = options.start;
  double trial = options.start;
  bool have_upper = false;
  if (trace) trace->steps.push_back({0, trial, {}});
  for (int it = 1; it <= options.max_iter; ++it) {
    std::vector<double> xs = engine.step(trial);
    const double next = engine.objective(xs);
    const double width_before = have_upper ? hi - lo : 1.0;
    if (engine.parametric_sign(xs, trial) >= 0) lo = std::max(lo, trial);
    if (!have_upper || next < hi) {
      hi = next;
      out.xs = std::move(xs);
      have_upper = true;
    }
    lo = std::min(lo, hi);
    out.iterations = it;
    out.phi = hi;
    out.last_step = hi - lo;
    if (trace) trace->steps.push_back({it, hi, Placement{out.xs}});
    if (hi - lo <= options.tol * std::max(1.0, hi)) {
      out.converged = true;
      break;
    }
    trial = (hi - lo <= 0.5 * width_before) ? hi : lo + 0.5 * (hi - lo);
  }
  return out;
}

FixedPointSolution degenerate_solution(const IntervalPartition& partition, std::size_t pinned) {
  FixedPointSolution s;
  s.phi_star = 0.0;
  s.y_star = 1.0;
  s.j2 = static_cast<int>(partition.size());
  s.branch = Branch::DEGENERATE_ZERO;
  s.converged = true;
  s.placement.positions.assign(partition.size(), 1.0);
  if (partition.size() == 1) return s;
  for (std::size_t i = 0; i < pinned; ++i) s.placement.positions[i] = 0.0;
  return s;
}

FixedPointSolution finalize(const IntervalPartition& partition, const Engine& engine,
                            const IterationResult& run) {
  FixedPointSolution s;
  s.iterations = run.iterations;
  s.phi_star = run.phi;
  s.placement.positions = run.xs;
  s.residual = run.last_step;
  if (!run.converged) {
    s.converged = false;
    s.branch = Branch::PHI1;
    return s;
  }
  const HContext& ctx = engine.ctx();
  const double phi_hat = run.phi;
  // Below the normal range phi_hat has lost its relative precision; the
  // branch points then come from the log of the iterate's ratio.
  const bool tiny = phi_hat < std::numeric_limits<double>::min();
  const double log_phi_hat = tiny ? engine.log_objective(run.xs) : std::log(phi_hat);
  s.y_star = tiny ? h_invert_upper_log(ctx, log_phi_hat).x : h_invert_upper(ctx, phi_hat).x;
  const std::size_t j2 = partition.locate(s.y_star);
  s.j2 = static_cast<int>(j2) + 1;

  std::vector<double> xs;
  if (ctx.r == 0.0) {
    xs = engine.structured_no_failure(j2, s.y_star);
    s.phi_star = engine.objective(xs);
    s.branch = Branch::PHI1;
  } else {
    const double y_ss =
        tiny ? h_invert_lower_log(ctx, log_phi_hat) : h_invert_lower(ctx, phi_hat);
    const std::size_t j1 = partition.locate(y_ss);
    s.y_star_star = y_ss;
    s.j1 = static_cast<int>(j1) + 1;
    xs = engine.structured(j1, j2, s.y_star, true);
    s.phi_star = engine.objective(xs);
    s.branch = Branch::PHI1;
    if (j1 >= engine.pinned()) {
      std::vector<double> alt = engine.structured(j1, j2, s.y_star, false);
      const bool better = tiny ? engine.log_objective(alt) < engine.log_objective(xs)
                               : engine.objective(alt) < s.phi_star;
      if (better) {
        s.phi_star = engine.objective(alt);
        s.branch = Branch::PHI2;
        xs = std::move(alt);
      }
    }
  }
  s.placement.positions = std::move(xs);
  const double gap = std::fabs(s.phi_star - phi_hat);
  s.residual = std::max(run.last_step, gap);
  s.converged = gap <= kConsistencyTol * std::max(1.0, phi_hat);
  return s;
}

FixedPointSolution run_solver(const IntervalPartition& partition, double r, double k, int m,
                              const SolverOptions& options) {
  check_options(options);
  const Engine engine(partition, r, k, m);
  const std::size_t n = partition.size();
  if (r > 0.0 && n - std::min(n, engine.pinned()) <= 1) {
    return degenerate_solution(partition, engine.pinned());
  }
  if (r == 0.0 && n == 1) return degenerate_solution(partition, 0);
  return finalize(partition, engine, iterate(engine, options, nullptr));
}

}  // namespace

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::PHI1: return "PHI1";
    case Branch::PHI2: return "PHI2";
    case Branch::DEGENERATE_ZERO: return "DEGENERATE_ZERO";
  }
  return "UNKNOWN";
}

NoConvergenceError::NoConvergenceError(FixedPointSolution solution)
    : Error(ErrorCode::NoConvergence,
            "no convergence after " + std::to_string(solution.iterations) +
                " iterations (residual " + std::to_string(solution.residual) + ")"),
      solution_(std::move(solution)) {}

const FixedPointSolution& require_converged(const FixedPointSolution& solution) {
  if (!solution.converged) throw NoConvergenceError(solution);
  return solution;
}

double weighted_objective(std::span<const double> positions, std::span<const double> weights,
                          double r, double k, int m) {
  if (positions.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "positions and weights differ in length");
  }
  std::vector<double> t(positions.size(), kNegInf);
  double shift = kNegInf;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    t[i] = logspace::log_pow(positions[i], r) + logspace::log_pow1m(positions[i], k);
    shift = std::max(shift, t[i]);
  }
  if (shift == kNegInf) {
    throw Error(ErrorCode::ZeroDenominator, "every term of the denominator vanishes");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (t[i] == kNegInf) continue;
    const double g = weights[i] * std::exp(t[i] - shift);
    den += g;
    num += g * logspace::pow1m(positions[i], m);
  }
  return num / den;
}

double objective_value(const IntervalPartition& partition, const Placement& placement, double r,
                       double k, int m) {
  validate_placement(partition, placement);
  validate_observation({r, k});
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  return weighted_objective(placement.positions, partition.masses(), r, k, m);
}

double prior_objective(const DiscretePrior& prior, double r, double k, int m) {
  std::vector<double> xs;
  std::vector<double> ws;
  for (const Atom& a : prior.atoms) {
    xs.push_back(a.location);
    ws.push_back(a.mass);
  }
  return weighted_objective(xs, ws, r, k, m);
}

int pinned_intervals(const IntervalPartition& partition, double r) {
  if (r == 0.0) return 0;
  return partition.fault_free() ? 2 : 1;
}

double phi_supremum(const IntervalPartition& partition, double r, int m) {
  const auto first = static_cast<std::size_t>(pinned_intervals(partition, r));
  if (first >= partition.size()) return 0.0;
  return logspace::pow1m(partition.upper(first), m);
}

FixedPointSolution solve_general(const IntervalPartition& partition, double r, double k, int m,
                                 const SolverOptions& options) {
  if (partition.fault_free()) {
    throw Error(ErrorCode::InvalidRegime, "fault-free partitions use solve_fault_free");
  }
  if (!(r > 0.0) || !(k > 0.0)) {
    throw Error(ErrorCode::InvalidRegime, "solve_general needs r > 0 and k > 0");
  }
  return run_solver(partition, r, k, m, options);
}

FixedPointSolution solve_no_failure(const IntervalPartition& partition, double k, int m,
                                    const SolverOptions& options) {
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidRegime, "solve_no_failure needs k > 0");
  return run_solver(partition, 0.0, k, m, options);
}

FixedPointSolution solve_fault_free(const IntervalPartition& partition, double r, double k, int m,
                                    const SolverOptions& options) {
  if (!partition.fault_free()) {
    throw Error(ErrorCode::InvalidRegime, "partition has no fault-free point mass");
  }
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidRegime, "solve_fault_free needs k > 0");
  validate_observation({r, k});
  return run_solver(partition, r, k, m, options);
}

FixedPointSolution solve(const IntervalPartition& partition, double r, double k, int m,
                         const SolverOptions& options) {
  validate_observation({r, k});
  if (partition.fault_free()) return solve_fault_free(partition, r, k, m, options);
  if (r == 0.0) return solve_no_failure(partition, k, m, options);
  return solve_general(partition, r, k, m, options);
}

DiscretePrior build_conservative_prior(const FixedPointSolution& solution,
                                       const IntervalPartition& partition, double r, double k,
                                       int m) {
  if (!solution.converged) {
    throw Error(ErrorCode::InconsistentSolution, "solution did not converge");
  }
  validate_placement(partition, solution.placement);
  DiscretePrior prior;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const double x = solution.placement.positions[i];
    if (!prior.atoms.empty() && prior.atoms.back().location == x) {
      prior.atoms.back().mass += partition.mass(i);
    } else {
      prior.atoms.push_back({x, partition.mass(i)});
    }
  }
  if (solution.branch != Branch::DEGENERATE_ZERO) {
    const double phi = prior_objective(prior, r, k, m);
    if (!(std::fabs(phi - solution.phi_star) <= 1e-10)) {
      throw Error(ErrorCode::InconsistentSolution,
                  "prior gives " + std::to_string(phi) + ", solution reports " +
                      std::to_string(solution.phi_star));
    }
  }
  return prior;
}

IterateTrace iterate_trace(const IntervalPartition& partition, double r, double k, int m,
                           const SolverOptions& options) {
  check_options(options);
  validate_observation({r, k});
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidRegime, "iteration needs k > 0");
  const Engine engine(partition, r, k, m);
  IterateTrace trace;
  const std::size_t n = partition.size();
  if ((r > 0.0 && n - std::min(n, engine.pinned()) <= 1) || (r == 0.0 && n == 1)) {
    trace.steps.push_back({0, 0.0, degenerate_solution(partition, engine.pinned()).placement});
    trace.converged = true;
    return trace;
  }
  trace.converged = iterate(engine, options, &trace).converged;
  return trace;
}

}  // namespace cbi

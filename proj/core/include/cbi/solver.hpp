// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_SOLVER_HPP
#define CBI_SOLVER_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cbi/error.hpp"
#include "cbi/model.hpp"

namespace cbi {

struct SolverOptions {
  double tol = 1e-13;
  int max_iter = 200;
  double start = 1.0;  // initial phi estimate, in (0, 1]
};

enum class Branch { PHI1, PHI2, DEGENERATE_ZERO };

std::string_view to_string(Branch branch) noexcept;

/// Result of a conservative solve. Interval indices j1 and j2 are 1-based.
struct FixedPointSolution {
  double phi_star = 0.0;
  double y_star = 1.0;
  std::optional<double> y_star_star;
  std::optional<int> j1;
  int j2 = 1;
  Branch branch = Branch::DEGENERATE_ZERO;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  Placement placement;  // attaining placement, one position per interval
};

/// Thrown by require_converged; carries the last iterate.
class NoConvergenceError : public Error {
 public:
  explicit NoConvergenceError(FixedPointSolution solution);
  const FixedPointSolution& solution() const noexcept { return solution_; }

 private:
  FixedPointSolution solution_;
};

const FixedPointSolution& require_converged(const FixedPointSolution& solution);

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

struct DiscretePrior {
  std::vector<Atom> atoms;
};

/// sum w_i x_i^r (1-x_i)^(m+k) / sum w_i x_i^r (1-x_i)^k for unnormalized
/// weights. Scaling every weight by a power of two leaves the result unchanged
/// bit for bit.
double weighted_objective(std::span<const double> positions, std::span<const double> weights,
                          double r, double k, int m);

double objective_value(const IntervalPartition& partition, const Placement& placement, double r,
                       double k, int m);

double prior_objective(const DiscretePrior& prior, double r, double k, int m);

FixedPointSolution solve_general(const IntervalPartition& partition, double r, double k, int m,
                                 const SolverOptions& options = {});

FixedPointSolution solve_no_failure(const IntervalPartition& partition, double k, int m,
                                    const SolverOptions& options = {});

FixedPointSolution solve_fault_free(const IntervalPartition& partition, double r, double k, int m,
                                    const SolverOptions& options = {});

/// Picks the solver for the regime: fault-free, r == 0, or general.
FixedPointSolution solve(const IntervalPartition& partition, double r, double k, int m,
                         const SolverOptions& options = {});

DiscretePrior build_conservative_prior(const FixedPointSolution& solution,
                                       const IntervalPartition& partition, double r, double k,
                                       int m);

struct TraceStep {
  int t = 0;
  double phi = 0.0;
  Placement placement;  // placement that produced phi (empty for the start value)
};

struct IterateTrace {
  std::vector<TraceStep> steps;
  bool monotone = true;  // nonincreasing after the first update
  bool converged = false;
};

IterateTrace iterate_trace(const IntervalPartition& partition, double r, double k, int m,
                           const SolverOptions& options = {});

/// Number of intervals whose mass is forced to x = 0 in the solve.
int pinned_intervals(const IntervalPartition& partition, double r);

/// sup over k of the conservative phi: (1 - upper endpoint of the first
/// non-pinned interval)^m.
double phi_supremum(const IntervalPartition& partition, double r, int m);

}  // namespace cbi

#endif  // CBI_SOLVER_HPP

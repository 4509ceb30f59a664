// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_CLI_COMMANDS_HPP
#define CBI_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cbi_cli/config.hpp"
#include "json.hpp"

namespace cbi::cli {

// Shortest text that parses back to the same double.
std::string format_number(double v);

// ---- solve ---------------------------------------------------------------

struct SolveReport {
  FixedPointSolution solution;
  DiscretePrior prior;
};

SolveReport run_solve(const ProblemConfig& config);
nlohmann::json solve_json(const ProblemConfig& config, const SolveReport& report);
void write_solve_text(std::ostream& out, const SolveReport& report);

void write_trace_csv(std::ostream& out, const IterateTrace& trace);

// ---- plan / table --------------------------------------------------------

nlohmann::json plan_json(const ProblemConfig& config);

struct TableSpec {
  std::vector<std::pair<int, double>> targets;  // (m, alpha)
  std::vector<double> y2_values;
  std::vector<std::int64_t> r_values;
  double y1 = 1e-6;
};

TableSpec default_table_spec();

struct TableCell {
  int m = 0;
  double alpha = 0.0;
  double y2 = 0.0;
  std::int64_t r = 0;
  std::int64_t beta_total = 0;
  std::optional<std::int64_t> cbi_total;
  std::optional<double> ratio;
  bool feasible = false;
  std::string status;  // INFEASIBLE / INFEASIBLE_NUMERIC when not feasible
  std::string error;
};

/// Cells ordered by target, then y2, then r, regardless of `jobs`.
std::vector<TableCell> run_table(const TableSpec& spec, int jobs = 1);
void write_table_csv(std::ostream& out, const std::vector<TableCell>& cells);

// ---- curves --------------------------------------------------------------

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points);
void write_stationary_csv(std::ostream& out, const std::vector<StationaryPoint>& points);
void write_phi_growth_csv(std::ostream& out, const std::vector<PhiGrowthPoint>& points,
                          double limit);

/// `count` evenly spaced samples of h over [0, 1], skipping the pole band.
void write_h_trace_csv(std::ostream& out, const HContext& ctx, int count);

/// Parses "a,b,c" or "lo:hi:count" (linear) or "lo:hi:count:log".
std::vector<double> parse_sweep(const std::string& spec);

// ---- oracle --------------------------------------------------------------

nlohmann::json oracle_json(const ProblemConfig& config, const GridOptions& options);

struct SpotCheck {
  int instances = 0;
  double max_abs_diff = 0.0;
  int failures = 0;  // |solver - oracle| > tolerance
};

SpotCheck oracle_spot_check(int instances, std::uint64_t seed, double tolerance,
                            const GridOptions& options);

}  // namespace cbi::cli

#endif  // CBI_CLI_COMMANDS_HPP

// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include "cbi_cli/random.hpp"

namespace cbi::cli {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <class T>
std::string optional_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*v);
  } else {
    return std::to_string(*v);
  }
}

json plan_to_json(const PlanResult& plan) {
  json out = {{"status", to_string(plan.status)}, {"feasible", plan.feasible}};
  if (plan.feasible) {
    out["k_required"] = *plan.k_required;
    out["total_demands"] = plan.total_demands;
    out["phi_at_k"] = plan.phi_at_k;
    out["boundary_verified"] = plan.boundary_verified;
  }
  return out;
}

std::int64_t integral_r(double r) {
  if (r != std::floor(r)) throw Error(ErrorCode::InvalidArgument, "planning needs an integer r");
  return static_cast<std::int64_t>(r);
}

TableCell compute_cell(int m, double alpha, double y1, double y2, std::int64_t r) {
  TableCell cell;
  cell.m = m;
  cell.alpha = alpha;
  cell.y2 = y2;
  cell.r = r;
  try {
    cell.beta_total = plan_demands_beta(m, alpha, r).total_demands;
    const IntervalPartition partition = uniform_consistent_partition({0.0, y1, y2, 1.0});
    const PlanResult cbi = plan_demands_cbi(partition, m, alpha, r);
    cell.feasible = cbi.feasible;
    cell.status = std::string(to_string(cbi.status));
    if (cbi.feasible) {
      cell.cbi_total = cbi.total_demands;
      cell.ratio = static_cast<double>(cell.beta_total) / static_cast<double>(cbi.total_demands);
    }
  } catch (const Error& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

SolveReport run_solve(const ProblemConfig& config) {
  if (config.objective.tag == ObjectiveKind::Tag::CAPPED) {
    throw Error(ErrorCode::InvalidRegime, "the capped objective is only available through the oracle");
  }
  const auto& [r, k] = config.observation;
  const int m = config.target.m;
  SolveReport report{require_converged(solve(config.partition, r, k, m, config.solver)), {}};
  report.prior = build_conservative_prior(report.solution, config.partition, r, k, m);
  return report;
}

json solve_json(const ProblemConfig& config, const SolveReport& report) {
  const FixedPointSolution& s = report.solution;
  json atoms = json::array();
  for (const Atom& a : report.prior.atoms) atoms.push_back({{"location", a.location}, {"mass", a.mass}});
  return {{"config", to_json(config)},
          {"phi_star", s.phi_star},
          {"y_star", s.y_star},
          {"y_star_star", optional_number(s.y_star_star)},
          {"j1", s.j1 ? json(*s.j1) : json(nullptr)},
          {"j2", s.j2},
          {"branch", to_string(s.branch)},
          {"residual", s.residual},
          {"iterations", s.iterations},
          {"converged", s.converged},
          {"placement", s.placement.positions},
          {"prior", atoms}};
}

void write_solve_text(std::ostream& out, const SolveReport& report) {
  const FixedPointSolution& s = report.solution;
  out << "phi_star     " << format_number(s.phi_star) << '\n'
      << "y_star       " << format_number(s.y_star) << '\n'
      << "y_star_star  " << (s.y_star_star ? format_number(*s.y_star_star) : "-") << '\n'
      << "j1           " << (s.j1 ? std::to_string(*s.j1) : "-") << '\n'
      << "j2           " << s.j2 << '\n'
      << "branch       " << to_string(s.branch) << '\n'
      << "residual     " << format_number(s.residual) << '\n'
      << "iterations   " << s.iterations << '\n'
      << "prior\n";
  for (const Atom& a : report.prior.atoms) {
    out << "  " << format_number(a.location) << "  " << format_number(a.mass) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace) {
  std::size_t n = 0;
  for (const TraceStep& s : trace.steps) n = std::max(n, s.placement.positions.size());
  out << "t,phi";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  out << '\n';
  for (const TraceStep& s : trace.steps) {
    out << s.t << ',' << format_number(s.phi);
    for (std::size_t i = 0; i < n; ++i) {
      out << ',';
      if (i < s.placement.positions.size()) out << format_number(s.placement.positions[i]);
    }
    out << '\n';
  }
}

json plan_json(const ProblemConfig& config) {
  if (!config.target.alpha) throw Error(ErrorCode::InvalidArgument, "plan needs target.alpha");
  const double alpha = *config.target.alpha;
  const int m = config.target.m;
  const std::int64_t r = integral_r(config.observation.r);
  return {{"m", m},
          {"alpha", alpha},
          {"r", r},
          {"beta", plan_to_json(plan_demands_beta(m, alpha, r))},
          {"cbi", plan_to_json(plan_demands_cbi(config.partition, m, alpha, r, config.solver))}};
}

TableSpec default_table_spec() {
  TableSpec spec;
  spec.targets = {{46, 0.009895}, {500, 0.097982}, {1000, 0.178476}};
  spec.y2_values = {1e-4, 2e-5, 1e-5};
  for (std::int64_t r = 0; r <= 9; ++r) spec.r_values.push_back(r);
  return spec;
}

std::vector<TableCell> run_table(const TableSpec& spec, int jobs) {
  struct Job {
    int m;
    double alpha;
    double y2;
    std::int64_t r;
  };
  std::vector<Job> work;
  for (const auto& [m, alpha] : spec.targets) {
    for (double y2 : spec.y2_values) {
      for (std::int64_t r : spec.r_values) work.push_back({m, alpha, y2, r});
    }
  }
  std::vector<TableCell> cells(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      const Job& j = work[i];
      cells[i] = compute_cell(j.m, j.alpha, spec.y1, j.y2, j.r);
    }
  };
  const int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return cells;
}

void write_table_csv(std::ostream& out, const std::vector<TableCell>& cells) {
  out << "m,alpha,y2,r,beta_total,cbi_total,ratio,feasible,error\n";
  for (const TableCell& c : cells) {
    out << c.m << ',' << format_number(c.alpha) << ',' << format_number(c.y2) << ',' << c.r << ','
        << c.beta_total << ',' << (c.cbi_total ? std::to_string(*c.cbi_total) : c.status) << ','
        << optional_field(c.ratio) << ',' << (c.feasible ? "true" : "false") << ',';
    // Error text is quoted so embedded commas stay in one field.
    if (!c.error.empty()) {
      std::string quoted = c.error;
      std::replace(quoted.begin(), quoted.end(), '"', '\'');
      out << '"' << quoted << '"';
    }
    out << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points) {
  out << "r,beta_total,cbi_total,ratio,feasible\n";
  for (const RatioPoint& p : points) {
    out << p.r << ',' << p.beta_total << ',' << optional_field(p.cbi_total) << ','
        << optional_field(p.ratio) << ',' << (p.feasible ? "true" : "false") << '\n';
  }
}

void write_stationary_csv(std::ostream& out, const std::vector<StationaryPoint>& points) {
  out << "r,k_c,y_star,y_star_star,pole,x_star_limit\n";
  for (const StationaryPoint& p : points) {
    out << p.r << ',' << optional_field(p.k_c) << ',';
    if (p.feasible) {
      out << format_number(p.y_star) << ',' << optional_field(p.y_star_star) << ','
          << format_number(p.pole);
    } else {
      out << ",,";
    }
    out << ',' << format_number(p.x_star_limit) << '\n';
  }
}

void write_phi_growth_csv(std::ostream& out, const std::vector<PhiGrowthPoint>& points,
                          double limit) {
  out << "k,phi_star,limit\n";
  for (const PhiGrowthPoint& p : points) {
    out << format_number(p.k) << ',' << format_number(p.phi_star) << ',' << format_number(limit)
        << '\n';
  }
}

void write_h_trace_csv(std::ostream& out, const HContext& ctx, int count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "h-trace needs at least 2 samples");
  out << "x,h\n";
  for (int j = 0; j < count; ++j) {
    const double x = j == count - 1 ? 1.0 : static_cast<double>(j) / (count - 1);
    double h = 0.0;
    try {
      h = h_eval(ctx, x);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PoleEvaluation) continue;
      throw;
    }
    out << format_number(x) << ',' << format_number(h) << '\n';
  }
}

std::vector<double> parse_sweep(const std::string& spec) {
  auto to_number = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "' in sweep");
    }
    return v;
  };
  std::vector<std::string> parts;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  if (sep == ',') {
    std::vector<double> out;
    for (const std::string& p : parts) out.push_back(to_number(p));
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty sweep");
    return out;
  }
  const bool log_scale = parts.size() == 4 && parts[3] == "log";
  if (parts.size() != 3 && !log_scale) {
    throw Error(ErrorCode::InvalidArgument, "sweep must be a,b,c or lo:hi:count[:log]");
  }
  const double lo = to_number(parts[0]);
  const double hi = to_number(parts[1]);
  const double count = to_number(parts[2]);
  if (count < 1 || count != std::floor(count) || (log_scale && !(lo > 0.0 && hi > 0.0))) {
    throw Error(ErrorCode::InvalidArgument, "invalid sweep range");
  }
  const int c = static_cast<int>(count);
  std::vector<double> out;
  for (int j = 0; j < c; ++j) {
    const double t = c == 1 ? 0.0 : static_cast<double>(j) / (c - 1);
    const double v = log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                         : lo + t * (hi - lo);
    out.push_back(j == c - 1 ? hi : (j == 0 ? lo : v));
  }
  return out;
}

json oracle_json(const ProblemConfig& config, const GridOptions& options) {
  const auto& [r, k] = config.observation;
  const GridResult g =
      grid_minimize(config.partition, config.objective, r, k, config.target.m, options);
  json out = {{"phi_hat", g.phi_hat},
              {"placement", g.placement.positions},
              {"level_values", g.level_values}};
  if (config.objective.tag == ObjectiveKind::Tag::STANDARD && k > 0.0) {
    const FixedPointSolution s = solve(config.partition, r, k, config.target.m, config.solver);
    out["solver_phi_star"] = s.phi_star;
    out["abs_diff"] = std::fabs(s.phi_star - g.phi_hat);
  }
  return out;
}

SpotCheck oracle_spot_check(int instances, std::uint64_t seed, double tolerance,
                            const GridOptions& options) {
  std::mt19937_64 rng(seed);
  RandomSpec spec;
  spec.n_min = 2;
  spec.n_max = 4;
  SpotCheck out;
  for (int i = 0; i < instances; ++i) {
    spec.r_max = i % 2 == 0 ? 0.0 : 100.0;
    const RandomInstance inst = random_instance(rng, spec);
    const double solver =
        require_converged(solve(inst.partition, inst.r, inst.k, inst.m)).phi_star;
    const double oracle =
        grid_minimize(inst.partition, ObjectiveKind::standard(), inst.r, inst.k, inst.m, options)
            .phi_hat;
    const double diff = std::fabs(solver - oracle);
    out.max_abs_diff = std::max(out.max_abs_diff, diff);
    if (!(diff <= tolerance)) ++out.failures;
    ++out.instances;
  }
  return out;
}

}  // namespace cbi::cli

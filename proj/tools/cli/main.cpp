// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbi_cli/commands.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

struct Globals {
  std::string config;
  std::string out;
  bool json = false;
  int jobs = 1;
  std::uint64_t seed = 20260101;
};

cbi::cli::ProblemConfig need_config(const Globals& g) {
  if (g.config.empty()) throw cbi::Error(cbi::ErrorCode::InvalidArgument, "--config is required");
  return cbi::cli::load_config(g.config);
}

std::vector<std::int64_t> to_integers(const std::vector<double>& values) {
  std::vector<std::int64_t> out;
  for (double v : values) {
    if (v < 0 || v != static_cast<double>(static_cast<std::int64_t>(v))) {
      throw cbi::Error(cbi::ErrorCode::InvalidArgument, "sweep values must be nonnegative integers");
    }
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::pair<int, double> parse_target(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw cbi::Error(cbi::ErrorCode::InvalidArgument, "targets are written m:alpha");
  }
  return {std::stoi(spec.substr(0, colon)), std::stod(spec.substr(colon + 1))};
}

void print_plan_text(std::ostream& out, const nlohmann::json& plan) {
  for (const char* which : {"beta", "cbi"}) {
    const auto& p = plan.at(which);
    out << which << "  " << p.at("status").get<std::string>();
    if (p.at("feasible").get<bool>()) {
      out << "  k=" << p.at("k_required") << "  total=" << p.at("total_demands")
          << "  phi=" << cbi::cli::format_number(p.at("phi_at_k").get<double>());
    }
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative Bayesian reliability assessment"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Problem config (JSON)");
  app.add_option("--out", g.out, "Write output to this file");
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--jobs", g.jobs, "Worker threads for table")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized spot checks");

  auto* solve_cmd = app.add_subcommand("solve", "Worst-case predictive probability and prior");
  bool with_trace = false;
  solve_cmd->add_flag("--trace", with_trace, "Also print the iterate sequence");

  auto* plan_cmd = app.add_subcommand("plan", "Success counts needed for a 1-alpha target");

  auto* table_cmd = app.add_subcommand("table", "Beta vs conservative demand table (CSV)");
  std::vector<std::string> targets;
  std::vector<double> y2_values;
  std::vector<double> r_values;
  double y1 = 1e-6;
  table_cmd->add_option("--target", targets, "m:alpha pairs");
  table_cmd->add_option("--y2", y2_values, "y2 values");
  table_cmd->add_option("--r", r_values, "failure counts");
  table_cmd->add_option("--y1", y1, "first breakpoint");

  auto* curve_cmd = app.add_subcommand("curve", "Series for plotting (CSV)");
  std::string kind;
  std::string sweep;
  int samples = 101;
  curve_cmd->add_option("kind", kind, "ratio | stationary | phi-growth | h-trace")
      ->required()
      ->check(CLI::IsMember({"ratio", "stationary", "phi-growth", "h-trace"}));
  curve_cmd->add_option("--sweep", sweep, "a,b,c or lo:hi:count[:log]");
  curve_cmd->add_option("--samples", samples, "h-trace sample count");

  auto* trace_cmd = app.add_subcommand("trace", "Iterate sequence of the parametric solve (CSV)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Grid-search cross-check");
  cbi::GridOptions grid;
  int random_instances = 0;
  double tolerance = 1e-6;
  oracle_cmd->add_option("--density", grid.density, "grid points per interval");
  oracle_cmd->add_option("--levels", grid.levels, "refinement rounds");
  oracle_cmd->add_option("--random", random_instances, "spot-check N random instances");
  oracle_cmd->add_option("--tolerance", tolerance, "allowed |solver - oracle|");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      std::cerr << "error: cannot write " << g.out << '\n';
      return 1;
    }
  }
  std::ostream& out = g.out.empty() ? std::cout : file;

  try {
    if (solve_cmd->parsed()) {
      const auto config = need_config(g);
      const auto report = cbi::cli::run_solve(config);
      if (g.json) {
        auto doc = cbi::cli::solve_json(config, report);
        if (with_trace) {
          const auto trace = cbi::iterate_trace(config.partition, config.observation.r,
                                                config.observation.k, config.target.m, config.solver);
          nlohmann::json steps = nlohmann::json::array();
          for (const auto& s : trace.steps) steps.push_back({{"t", s.t}, {"phi", s.phi}});
          doc["trace"] = steps;
        }
        out << doc.dump(2) << '\n';
      } else {
        cbi::cli::write_solve_text(out, report);
        if (with_trace) {
          out << "trace\n";
          cbi::cli::write_trace_csv(out, cbi::iterate_trace(config.partition, config.observation.r,
                                                            config.observation.k, config.target.m,
                                                            config.solver));
        }
      }
    } else if (plan_cmd->parsed()) {
      const auto plan = cbi::cli::plan_json(need_config(g));
      if (g.json) {
        out << plan.dump(2) << '\n';
      } else {
        print_plan_text(out, plan);
      }
    } else if (table_cmd->parsed()) {
      cbi::cli::TableSpec spec = cbi::cli::default_table_spec();
      if (!targets.empty()) {
        spec.targets.clear();
        for (const auto& t : targets) spec.targets.push_back(parse_target(t));
      }
      if (!y2_values.empty()) spec.y2_values = y2_values;
      if (!r_values.empty()) spec.r_values = to_integers(r_values);
      spec.y1 = y1;
      const auto cells = cbi::cli::run_table(spec, g.jobs);
      cbi::cli::write_table_csv(out, cells);
      std::size_t failed = 0;
      for (const auto& c : cells) failed += c.error.empty() ? 0 : 1;
      if (!cells.empty() && failed == cells.size()) return 1;
    } else if (curve_cmd->parsed()) {
      const auto config = need_config(g);
      const int m = config.target.m;
      if (kind == "h-trace") {
        cbi::cli::write_h_trace_csv(
            out, cbi::make_hcontext(m, config.observation.k, config.observation.r), samples);
      } else if (kind == "phi-growth") {
        const auto ks = cbi::cli::parse_sweep(sweep.empty() ? "1:1e8:9:log" : sweep);
        const double r = config.observation.r;
        cbi::cli::write_phi_growth_csv(out, cbi::phi_growth_curve(config.partition, r, m, ks),
                                       cbi::phi_growth_limit(config.partition, r, m));
      } else {
        if (!config.target.alpha) {
          throw cbi::Error(cbi::ErrorCode::InvalidArgument, "this curve needs target.alpha");
        }
        const auto rs = to_integers(cbi::cli::parse_sweep(sweep.empty() ? "0:9:10" : sweep));
        if (kind == "ratio") {
          cbi::cli::write_ratio_csv(out, cbi::ratio_curve(config.partition, m, *config.target.alpha, rs));
        } else {
          cbi::cli::write_stationary_csv(
              out, cbi::stationary_convergence_curve(config.partition, m, *config.target.alpha, rs));
        }
      }
    } else if (trace_cmd->parsed()) {
      const auto config = need_config(g);
      cbi::cli::write_trace_csv(out, cbi::iterate_trace(config.partition, config.observation.r,
                                                        config.observation.k, config.target.m,
                                                        config.solver));
    } else if (oracle_cmd->parsed()) {
      if (random_instances > 0) {
        const auto check = cbi::cli::oracle_spot_check(random_instances, g.seed, tolerance, grid);
        if (g.json) {
          out << nlohmann::json{{"instances", check.instances},
                                {"seed", g.seed},
                                {"max_abs_diff", check.max_abs_diff},
                                {"failures", check.failures}}
                     .dump(2)
              << '\n';
        } else {
          out << "instances     " << check.instances << '\n'
              << "seed          " << g.seed << '\n'
              << "max_abs_diff  " << cbi::cli::format_number(check.max_abs_diff) << '\n'
              << "failures      " << check.failures << '\n';
        }
        return check.failures == 0 ? 0 : 1;
      }
      const auto doc = cbi::cli::oracle_json(need_config(g), grid);
      out << (g.json ? doc.dump(2) : doc.dump()) << '\n';
    }
  } catch (const cbi::NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const cbi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

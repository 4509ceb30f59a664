// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. Prints one PASS/FAIL line per criterion; exits nonzero
// when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbi/cbi.hpp"
#include "cbi/logspace.hpp"
#include "cbi_cli/commands.hpp"
#include "cbi_cli/random.hpp"
#include "table1_reference.hpp"

namespace {

using namespace cbi;

// Pinned tolerances and budgets.
constexpr std::int64_t kBetaTolerance = 0;
constexpr std::int64_t kCbiTolerance = 2;
constexpr double kBetaSeconds = 5.0;
constexpr double kCbiSeconds = 120.0;
constexpr double kFixedPointTol = 1e-9;
constexpr double kOracleTol = 1e-6;
constexpr double kOracleSeconds = 60.0;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kNoFailureIdentityTol = 1e-10;
constexpr double kTwoTermTol = 1e-12;
constexpr double kLemmaRelTol = 0.01;
constexpr double kBetaRatioRelTol = 0.001;
constexpr double kGrowthRelTol = 0.005;
constexpr double kFullBayesGap = 0.01;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return cli::format_number(v); }

// 1 -------------------------------------------------------------------------
Outcome beta_column(std::uint64_t) {
  const auto t0 = Clock::now();
  const auto cells = cli::run_table(cli::default_table_spec(), 1);
  const double secs = seconds_since(t0);
  Outcome out;
  int checked = 0;
  int wrong = 0;
  std::ostringstream bad;
  for (const auto& c : cells) {
    for (std::size_t t = 0; t < reference::kTargets.size(); ++t) {
      if (reference::kTargets[t].m != c.m) continue;
      const std::int64_t want = reference::kBetaTotals[t][static_cast<std::size_t>(c.r)];
      ++checked;
      if (std::llabs(c.beta_total - want) > kBetaTolerance) {
        ++wrong;
        bad << " (m=" << c.m << ",r=" << c.r << ": " << c.beta_total << " vs " << want << ")";
      }
    }
  }
  out.pass = wrong == 0 && checked == 90 && secs < kBetaSeconds;
  out.detail = std::to_string(checked / 3) + " cells, " + std::to_string(wrong / 3) +
               " mismatched, " + num(secs) + " s" + bad.str();
  return out;
}

// 2 -------------------------------------------------------------------------
Outcome cbi_columns(std::uint64_t) {
  const auto t0 = Clock::now();
  const auto cells = cli::run_table(cli::default_table_spec(), 1);
  const double secs = seconds_since(t0);
  Outcome out;
  int within = 0;
  std::ostringstream bad;
  for (const auto& c : cells) {
    std::size_t t = 0;
    while (reference::kTargets[t].m != c.m) ++t;
    std::size_t y = 0;
    while (reference::kY2[y] != c.y2) ++y;
    const std::int64_t want = reference::kCbiTotals[t][y][static_cast<std::size_t>(c.r)];
    if (c.cbi_total && std::llabs(*c.cbi_total - want) <= kCbiTolerance) {
      ++within;
    } else {
      bad << " (m=" << c.m << ",y2=" << num(c.y2) << ",r=" << c.r << ": "
          << (c.cbi_total ? std::to_string(*c.cbi_total) : c.status + c.error) << " vs " << want
          << ")";
    }
  }
  out.pass = within == 90 && secs < kCbiSeconds;
  out.detail = std::to_string(within) + "/90 within +-" + std::to_string(kCbiTolerance) + ", " +
               num(secs) + " s" + bad.str();
  return out;
}

// 3 -------------------------------------------------------------------------
Outcome fixed_point_identities(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  cli::RandomSpec spec;
  spec.n_min = 3;
  spec.n_max = 5;
  spec.r_min = 1.0;
  spec.r_max = 100.0;
  spec.k_min = 1.0;
  spec.k_max = 1e5;
  spec.log_k = true;
  spec.m_min = 1;
  spec.m_max = 1000;
  int converged = 0;
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto inst = cli::random_instance(rng, spec);
    const FixedPointSolution s = solve_general(inst.partition, inst.r, inst.k, inst.m);
    if (!s.converged) continue;
    ++converged;
    const HContext ctx = make_hcontext(inst.m, inst.k, inst.r);
    bool ok = s.y_star_star.has_value();
    try {
      if (ok) {
        const double e1 = std::fabs(h_eval(ctx, s.y_star) - s.phi_star);
        const double e2 = std::fabs(h_eval(ctx, *s.y_star_star) - s.phi_star);
        worst = std::max({worst, e1, e2});
        ok = e1 <= kFixedPointTol && e2 <= kFixedPointTol && *s.y_star_star < ctx.lower_zero &&
             ctx.lower_zero < ctx.pole && ctx.pole < s.y_star;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++violations;
  }
  return {violations == 0 && converged > 0,
          std::to_string(converged) + "/500 converged, " + std::to_string(violations) +
              " violations, worst |h - phi| " + num(worst)};
}

// 4 -------------------------------------------------------------------------
Outcome oracle_equivalence(std::uint64_t seed) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  cli::RandomSpec spec;
  spec.n_min = 2;
  spec.n_max = 4;
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    spec.r_max = i % 2 == 0 ? 0.0 : 100.0;
    const auto inst = cli::random_instance(rng, spec);
    const FixedPointSolution s = solve(inst.partition, inst.r, inst.k, inst.m);
    const GridResult g =
        grid_minimize(inst.partition, ObjectiveKind::standard(), inst.r, inst.k, inst.m);
    const double diff = std::fabs(s.phi_star - g.phi_hat);
    worst = std::max(worst, diff);
    if (!s.converged || !(diff <= kOracleTol)) ++failures;
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < kOracleSeconds,
          "200 instances, " + std::to_string(failures) + " outside " + num(kOracleTol) +
              ", max diff " + num(worst) + ", " + num(secs) + " s"};
}

// 5 -------------------------------------------------------------------------
Outcome monotonicity(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> ks;
  for (double k = 1.0; k <= 1e6; k *= 1.8) ks.push_back(std::round(k));
  const std::vector<double> rs{0, 1, 2, 3, 5, 10, 20, 50};
  int k_violations = 0;
  int bound_violations = 0;
  int r_violations = 0;
  int ladders = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto partition = cli::random_partition(rng, 3 + trial % 3);
    const int m = trial % 2 == 0 ? 10 : 100;
    const double bound = logspace::pow1m(partition.upper(1), m);
    for (double r : {1.0, 3.0, 10.0}) {
      ++ladders;
      double prev = -1.0;
      for (double k : ks) {
        const double phi = require_converged(solve(partition, r, k, m)).phi_star;
        if (phi < prev - kMonotoneSlack) ++k_violations;
        if (phi > bound + kMonotoneSlack) ++bound_violations;
        prev = phi;
      }
    }
    for (double k : {1e2, 1e4, 1e6}) {
      ++ladders;
      double prev = 2.0;
      for (double r : rs) {
        const double phi = require_converged(solve(partition, r, k, m)).phi_star;
        if (phi > prev + kMonotoneSlack) ++r_violations;
        prev = phi;
      }
    }
  }
  return {k_violations == 0 && bound_violations == 0 && r_violations == 0,
          std::to_string(ladders) + " ladders; k-order " + std::to_string(k_violations) +
              ", bound " + std::to_string(bound_violations) + ", r-order " +
              std::to_string(r_violations) + " violations"};
}

// 6 -------------------------------------------------------------------------
Outcome degenerate_rules(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::ostringstream bad;
  int cases = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++cases;
    if (!ok) bad << " " << what;
  };
  for (int i = 0; i < 20; ++i) {
    const auto two = cli::random_partition(rng, 2, 1e-6, 0.9);
    const double r = 1.0 + i;
    const FixedPointSolution s = solve(two, r, 1e6, 10);
    expect(s.phi_star == 0.0 && s.branch == Branch::DEGENERATE_ZERO, "n=2");
  }
  const auto single = validate_partition({0.0, 1.0}, {1.0});
  for (double r : {0.0, 1.0, 7.0}) {
    const FixedPointSolution s = solve(single, r, 25.0, 4);
    const DiscretePrior prior = build_conservative_prior(s, single, r, 25.0, 4);
    expect(s.phi_star == 0.0 && prior.atoms.size() == 1 && prior.atoms[0].location == 1.0 &&
               prior.atoms[0].mass == 1.0,
           "n=1 r=" + num(r));
  }
  const auto ff = validate_partition({0.0, 1.0}, {0.4, 0.6}, true);
  for (double r : {1.0, 2.0, 9.0}) {
    for (double k : {1.0, 1e3, 1e7}) {
      const FixedPointSolution s = solve(ff, r, k, 46);
      expect(s.phi_star == 0.0 && s.branch == Branch::DEGENERATE_ZERO, "fault-free single r>0");
    }
  }
  const std::string text = bad.str();
  return {text.empty(), std::to_string(cases) + " cases" + (text.empty() ? "" : ", failed:" + text)};
}

// 7 -------------------------------------------------------------------------
Outcome no_failure_identities(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  cli::RandomSpec spec;
  spec.n_min = 2;
  spec.n_max = 5;
  spec.r_max = 0.0;
  spec.k_max = 1e5;
  spec.log_k = true;
  spec.m_max = 1000;
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    const auto inst = cli::random_instance(rng, spec);
    const FixedPointSolution s = require_converged(solve_no_failure(inst.partition, inst.k, inst.m));
    const double closed = logspace::pow1m(s.y_star, inst.m) * (inst.m + inst.k) / inst.k;
    const double err = std::fabs(s.phi_star - closed);
    worst = std::max(worst, err);
    if (!(err <= kNoFailureIdentityTol)) ++bad;
  }
  double worst_two = 0.0;
  int bad_two = 0;
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    const double p1 = unit(rng);
    const auto ff = validate_partition({0.0, 1.0}, {p1, 1.0 - p1}, true);
    const double k = std::round(std::exp(unit(rng) * std::log(1e5)));
    const int m = 1 + i * 7;
    const FixedPointSolution s = require_converged(solve_fault_free(ff, 0.0, k, m));
    const double p2 = 1.0 - p1;
    const double closed = (p1 + logspace::pow1m(s.y_star, m + k) * p2) /
                          (p1 + logspace::pow1m(s.y_star, k) * p2);
    const double err = std::fabs(s.phi_star - closed);
    worst_two = std::max(worst_two, err);
    if (!(err <= kTwoTermTol)) ++bad_two;
  }
  return {bad == 0 && bad_two == 0,
          "identity max err " + num(worst) + " (" + std::to_string(bad) +
              " > tol), two-term max err " + num(worst_two) + " (" + std::to_string(bad_two) +
              " > tol)"};
}

// 8 -------------------------------------------------------------------------
Outcome asymptotics(std::uint64_t) {
  const int m = 46;
  const double alpha = 0.009895;
  const std::int64_t r = 10000;
  const auto partition = uniform_consistent_partition({0.0, 1e-6, 1e-4, 1.0});
  const PlanResult plan = plan_demands_cbi(partition, m, alpha, r);
  Outcome out;
  if (!plan.feasible) return {false, "planner reports " + std::string(to_string(plan.status))};
  const auto k = static_cast<double>(*plan.k_required);
  const auto rr = static_cast<double>(r);
  const FixedPointSolution s = require_converged(solve(partition, rr, k, m));
  const double pole = rr / (rr + k);
  const AsymptoticLimits lim = asymptotic_limits(m, alpha, pole);
  const double e_star = std::fabs(s.y_star - lim.y_star_limit) / lim.y_star_limit;
  const double e_ss = std::fabs(*s.y_star_star - *lim.y_star_star_limit) / *lim.y_star_star_limit;

  const std::int64_t big_r = 1000000;
  const PlanResult beta = plan_demands_beta(m, alpha, big_r);
  const double kbeta_over_r = static_cast<double>(*beta.k_required) / static_cast<double>(big_r);
  const double e_beta = std::fabs(kbeta_over_r - lim.kbeta_over_r) / lim.kbeta_over_r;

  out.pass = e_star <= kLemmaRelTol && e_ss <= kLemmaRelTol && e_beta <= kBetaRatioRelTol;
  out.detail = "k_C=" + std::to_string(*plan.k_required) + ", y*=" + num(s.y_star) + " vs " +
               num(lim.y_star_limit) + " (rel " + num(e_star) + "), y**=" + num(*s.y_star_star) +
               " vs " + num(*lim.y_star_star_limit) + " (rel " + num(e_ss) + ", " +
               std::string(to_string(lim.y_star_star_track)) + "), k_beta/r=" + num(kbeta_over_r) +
               " vs " + num(lim.kbeta_over_r) + " (rel " + num(e_beta) + ")";
  return out;
}

// 9 -------------------------------------------------------------------------
Outcome growth_limits(std::uint64_t) {
  const auto ff = validate_partition({0.0, 1e-6, 1e-5, 1.0}, {0.9, 0.09, 0.009, 0.001}, true);
  const int m = 10000;
  const double k = 1e8;
  std::ostringstream detail;
  bool pass = true;
  for (double r : {1.0, 2.0, 5.0}) {
    const double limit = phi_growth_limit(ff, r, m);
    const double expected = std::exp(m * std::log1p(-1e-5));
    const double phi = require_converged(solve(ff, r, k, m)).phi_star;
    const double rel = std::fabs(phi - expected) / expected;
    pass = pass && rel <= kGrowthRelTol && limit == expected;
    detail << "r=" << num(r) << ": " << num(phi) << " vs " << num(expected) << " (rel " << num(rel)
           << "); ";
  }
  const auto curve = phi_growth_curve(ff, 0.0, m, {1e2, 1e4, 1e6, 1e8});
  bool nondecreasing = true;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    nondecreasing = nondecreasing && curve[i].phi_star >= curve[i - 1].phi_star - kMonotoneSlack;
  }
  const double top = curve.back().phi_star;
  pass = pass && nondecreasing && std::fabs(top - 1.0) <= kGrowthRelTol &&
         phi_growth_limit(ff, 0.0, m) == 1.0;
  detail << "r=0: phi(1e8)=" << num(top) << (nondecreasing ? ", nondecreasing" : ", NOT monotone");
  return {pass, detail.str()};
}

// 10 ------------------------------------------------------------------------
Outcome full_bayes(std::uint64_t) {
  const int m = 5;
  const double r = 1.0;
  const double k = 10.0;
  const double beta = beta_predictive(m, k, r);
  IntervalPartition partition = uniform_consistent_partition({0.0, 0.25, 0.5, 0.75, 1.0});
  double prev_gap = 2.0;
  bool monotone = true;
  bool reached = false;
  std::ostringstream gaps;
  for (int level = 0; level <= 8; ++level) {
    if (level > 0) partition = refine_partition(partition, 2);
    const double phi = require_converged(solve(partition, r, k, m)).phi_star;
    const double gap = beta - phi;
    monotone = monotone && gap <= prev_gap && gap >= -kMonotoneSlack;
    reached = reached || gap < kFullBayesGap * beta;
    gaps << (level ? "," : "") << num(gap / beta);
    prev_gap = gap;
  }
  return {monotone && reached, std::string("relative gaps ") + gaps.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(std::uint64_t)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::uint64_t seed = 20260101;
  app.add_option("--criterion", only, "Run a single criterion (1-10)");
  app.add_option("--seed", seed, "Seed for randomized criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "beta column of the demand table", beta_column},
      {2, "conservative columns of the demand table", cbi_columns},
      {3, "fixed-point identities on random instances", fixed_point_identities},
      {4, "agreement with the grid oracle", oracle_equivalence},
      {5, "monotonicity in k and r, supremum bound", monotonicity},
      {6, "degenerate zero rules", degenerate_rules},
      {7, "no-failure identity and fault-free two-term ratio", no_failure_identities},
      {8, "large-r limits", asymptotics},
      {9, "fault-free growth limits", growth_limits},
      {10, "convergence to the uniform-prior answer", full_bayes},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run(seed);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " -- "
              << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}

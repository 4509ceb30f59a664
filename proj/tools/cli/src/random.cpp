// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi_cli/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cbi::cli {

IntervalPartition random_partition(std::mt19937_64& rng, int n, double y_min, double y_max) {
  std::uniform_real_distribution<double> log_y(std::log(y_min), std::log(y_max));
  std::exponential_distribution<double> gamma1(1.0);
  for (;;) {
    std::vector<double> y{0.0, 1.0};
    for (int i = 1; i < n; ++i) y.push_back(std::exp(log_y(rng)));
    std::sort(y.begin(), y.end());
    if (std::adjacent_find(y.begin(), y.end()) != y.end()) continue;

    std::vector<double> p(static_cast<std::size_t>(n));
    for (double& v : p) v = gamma1(rng);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= total;
    if (std::any_of(p.begin(), p.end(), [](double v) { return !(v > 0.0 && v < 1.0); })) continue;
    if (std::fabs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) > 1e-13) continue;
    return validate_partition(std::move(y), std::move(p));
  }
}

RandomInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  std::uniform_int_distribution<int> n_dist(spec.n_min, spec.n_max);
  std::uniform_int_distribution<int> m_dist(spec.m_min, spec.m_max);
  std::uniform_real_distribution<double> r_dist(spec.r_min, spec.r_max);
  std::uniform_real_distribution<double> k_dist(spec.k_min, spec.k_max);
  std::uniform_real_distribution<double> log_k_dist(std::log(spec.k_min), std::log(spec.k_max));

  IntervalPartition partition = random_partition(rng, n_dist(rng), spec.y_min, spec.y_max);
  const double r = spec.r_max == 0.0 ? 0.0 : r_dist(rng);
  const double k = spec.log_k ? std::exp(log_k_dist(rng)) : k_dist(rng);
  const int m = m_dist(rng);
  return {std::move(partition), r, k, m};
}

}  // namespace cbi::cli

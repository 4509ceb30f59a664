// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_CLI_RANDOM_HPP
#define CBI_CLI_RANDOM_HPP

#include <random>

#include "cbi/model.hpp"

namespace cbi::cli {

/// Ranges for random problem instances. r and k are drawn as reals; k is
/// log-uniform when log_k is set. r_max == 0 yields no-failure instances.
struct RandomSpec {
  int n_min = 3;
  int n_max = 4;
  double r_min = 1.0;
  double r_max = 100.0;
  double k_min = 1.0;
  double k_max = 100.0;
  bool log_k = false;
  int m_min = 1;
  int m_max = 50;
  double y_min = 1e-6;  // inner breakpoints are log-uniform in [y_min, y_max]
  double y_max = 1e-1;
};

struct RandomInstance {
  IntervalPartition partition;
  double r = 0.0;
  double k = 0.0;
  int m = 1;
};

/// Log-uniform inner breakpoints with Dirichlet(1) masses.
IntervalPartition random_partition(std::mt19937_64& rng, int n, double y_min = 1e-6,
                                   double y_max = 1e-1);

RandomInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec);

}  // namespace cbi::cli

#endif  // CBI_CLI_RANDOM_HPP

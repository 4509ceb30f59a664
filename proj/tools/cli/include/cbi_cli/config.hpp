// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_CLI_CONFIG_HPP
#define CBI_CLI_CONFIG_HPP

#include <string>

#include "cbi/cbi.hpp"
#include "json.hpp"

namespace cbi::cli {

struct ProblemConfig {
  IntervalPartition partition;
  Observation observation;
  ReliabilityTarget target;
  ObjectiveKind objective;
  SolverOptions solver;
};

// Unknown keys are rejected at every level. Errors surface as cbi::Error.
ProblemConfig parse_config(const nlohmann::json& doc);
ProblemConfig parse_config_text(const std::string& text);
ProblemConfig load_config(const std::string& path);

nlohmann::json to_json(const ProblemConfig& config);

}  // namespace cbi::cli

#endif  // CBI_CLI_CONFIG_HPP

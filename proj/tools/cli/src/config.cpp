// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbi_cli/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace cbi::cli {
namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "config: " + what);
}

const json& require_object(const json& doc, std::string_view where) {
  if (!doc.is_object()) reject(std::string(where) + " must be an object");
  return doc;
}

void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> keys) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view k : keys) known = known || key == k;
    if (!known) reject("unknown field '" + key + "' in " + std::string(where));
  }
}

double number(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) reject(std::string(where) + "." + key + " is required");
  const json& v = obj.at(key);
  if (!v.is_number()) reject(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

int integer(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) reject(std::string(where) + "." + key + " is required");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) reject(std::string(where) + "." + key + " must be an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, std::string_view where) {
  if (!v.is_array()) reject(std::string(where) + " must be an array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) reject(std::string(where) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

IntervalPartition parse_partition(const json& doc) {
  require_object(doc, "partition");
  only_keys(doc, "partition", {"breakpoints", "masses", "fault_free"});
  if (!doc.contains("breakpoints")) reject("partition.breakpoints is required");
  std::vector<double> y = number_list(doc.at("breakpoints"), "partition.breakpoints");
  bool fault_free = false;
  if (doc.contains("fault_free")) {
    if (!doc.at("fault_free").is_boolean()) reject("partition.fault_free must be a boolean");
    fault_free = doc.at("fault_free").get<bool>();
  }
  if (!doc.contains("masses")) reject("partition.masses is required");
  const json& masses = doc.at("masses");
  if (masses.is_string()) {
    if (masses.get<std::string>() != "uniform-consistent") {
      reject("partition.masses must be a list or \"uniform-consistent\"");
    }
    if (fault_free) reject("a fault-free partition needs explicit masses");
    return uniform_consistent_partition(y);
  }
  return validate_partition(std::move(y), number_list(masses, "partition.masses"), fault_free);
}

}  // namespace

ProblemConfig parse_config(const json& doc) {
  require_object(doc, "config");
  only_keys(doc, "config", {"partition", "observation", "target", "objective", "solver"});
  if (!doc.contains("partition")) reject("partition is required");
  IntervalPartition partition = parse_partition(doc.at("partition"));

  Observation obs;
  if (doc.contains("observation")) {
    const json& o = require_object(doc.at("observation"), "observation");
    only_keys(o, "observation", {"r", "k"});
    obs.r = o.contains("r") ? number(o, "r", "observation") : 0.0;
    obs.k = o.contains("k") ? number(o, "k", "observation") : 0.0;
  }
  validate_observation(obs);

  if (!doc.contains("target")) reject("target is required");
  const json& t = require_object(doc.at("target"), "target");
  only_keys(t, "target", {"m", "alpha"});
  ReliabilityTarget target;
  target.m = integer(t, "m", "target");
  if (t.contains("alpha") && !t.at("alpha").is_null()) target.alpha = number(t, "alpha", "target");
  validate_target(target);

  ObjectiveKind objective;
  if (doc.contains("objective")) {
    const json& o = require_object(doc.at("objective"), "objective");
    only_keys(o, "objective", {"kind", "l"});
    const std::string kind = o.value("kind", std::string("standard"));
    if (kind == "capped") {
      const int l = integer(o, "l", "objective");
      if (l < 0 || l >= target.m) reject("objective.l must satisfy 0 <= l < m");
      objective = ObjectiveKind::capped(l);
    } else if (kind != "standard") {
      reject("objective.kind must be \"standard\" or \"capped\"");
    } else if (o.contains("l")) {
      reject("objective.l applies only to the capped kind");
    }
  }

  SolverOptions solver;
  if (doc.contains("solver")) {
    const json& s = require_object(doc.at("solver"), "solver");
    only_keys(s, "solver", {"tol", "max_iter"});
    if (s.contains("tol")) solver.tol = number(s, "tol", "solver");
    if (s.contains("max_iter")) solver.max_iter = integer(s, "max_iter", "solver");
    if (!(solver.tol > 0.0) || solver.max_iter < 1) reject("solver.tol > 0 and max_iter >= 1");
  }
  return ProblemConfig{std::move(partition), obs, target, objective, solver};
}

ProblemConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    reject(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) reject("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

json to_json(const ProblemConfig& config) {
  json partition = {{"breakpoints", config.partition.breakpoints()},
                    {"masses", config.partition.masses()},
                    {"fault_free", config.partition.fault_free()}};
  json target = {{"m", config.target.m}};
  if (config.target.alpha) target["alpha"] = *config.target.alpha;
  json objective = {{"kind", "standard"}};
  if (config.objective.tag == ObjectiveKind::Tag::CAPPED) {
    objective = {{"kind", "capped"}, {"l", *config.objective.l}};
  }
  return {{"partition", partition},
          {"observation", {{"r", config.observation.r}, {"k", config.observation.k}}},
          {"target", target},
          {"objective", objective},
          {"solver", {{"tol", config.solver.tol}, {"max_iter", config.solver.max_iter}}}};
}

}  // namespace cbi::cli

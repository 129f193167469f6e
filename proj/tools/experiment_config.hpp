#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ipep/algorithms.hpp"
#include "ipep/oracles.hpp"
#include "ipep/problems.hpp"
#include "ipep/schedules.hpp"

namespace ipep::cli {

// Flat key-value configuration with [sections]. Keys are "section.key".
// parse errors carry the file line; semantic errors carry the key.
class KeyValueConfig {
public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text, const std::string& origin);

  // --set section.key=value overrides
  void set(const std::string& dotted_key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

private:
  std::map<std::string, std::string> kv_;
  std::string origin_;
};

// Fully resolved experiment description.
struct ExperimentConfig {
  std::string method;  // igogm | igfgm | ifgm | istm | ogm | gd-baseline
  int K = 20;
  bool ogm_last_adjustment = false;

  StepsizeSchedule schedule;
  SmoothConvexProblem problem;
  ErrorPolicy policy = ErrorPolicy::RandomUnitSphere;
  InexactnessSchedule inexactness;
  std::uint64_t oracle_seed = 0;

  double x0_radius = 1.0;
  std::uint64_t x0_seed = 0;
  std::string output_dir = "out";

  Eigen::VectorXd starting_point() const;
};

// Build and validate an ExperimentConfig from raw key-values. Throws
// InvalidParameterError with a key-precise message on bad input.
ExperimentConfig resolve_experiment(const KeyValueConfig& cfg);

// Shared helper: build a stepsize schedule from "schedule.kind" (lambda |
// ogm-a | constant) with horizon K.
StepsizeSchedule schedule_from_cfg(const KeyValueConfig& cfg, int K);

}  // namespace ipep::cli

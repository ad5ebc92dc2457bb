#pragma once

// Experiment orchestration: runs a validated config and writes its artifacts
// (history.csv, summary.json, snapshot_<t>.field, trajectory.csv, probes.csv).

#include <string>
#include <vector>

#include "json.hpp"

#include "ergodamp/config.hpp"

namespace ergodamp {

std::string version_string();

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunSummary {
  ExperimentConfig config;
  /// Everything except wall-clock timing; identical for identical configs.
  nlohmann::json results;
  std::vector<CheckResult> checks;
  double wall_clock_seconds = 0.0;

  bool passed() const noexcept;
  /// The summary.json document (sorted keys, timing under "wall_clock_seconds").
  nlohmann::json to_json() const;
};

/// Runs the experiment. Solver errors do not escape: they become a failed
/// "run" check. When out_dir is non-empty the artifacts are written there.
RunSummary run_experiment(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace ergodamp

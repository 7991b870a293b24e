#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "doco/algo.hpp"
#include "doco/config.hpp"
#include "doco/metrics.hpp"
#include "doco/scenarios.hpp"
#include "doco/theory.hpp"

namespace doco {

// Shortest round-trip decimal form via std::to_chars; locale independent,
// so equal doubles always print as equal bytes.
std::string format_double(double v);

// A finished experiment: the built scenario, the trajectory and everything
// derived from it that the summary reports.
struct RunResult {
  Scenario scenario;
  TrajectoryRecord record;
  double alpha = 0.0;
  ConvexityConstants constants{};
  double stepsize_bound = 0.0;
  TheoryParams params{};
  InequalityReport report;
  std::optional<StabilityConstants> stability;  // present when the stepsize is stable
  double tracking_bound = 0.0;            // valid when stability is present
  double regret_bound_final = 0.0;        // valid when stability is present
  bool regret_bound_holds = false;        // prefix-wise, when stability is present
  double r_static = 0.0;
};

// Build, run and analyze one configuration (no file output).
RunResult execute(const RunConfig& config);

Scenario build_scenario(const RunConfig& config);

// Run and write trajectory.csv and summary.txt under config.out_dir.
RunResult run_command(const RunConfig& config);

// One independent run per value of the swept key, executed in parallel;
// writes per-run outputs plus a combined long-format sweep.csv ordered by
// the given values.
void sweep_command(const RunConfig& base, const std::string& axis,
                   const std::vector<std::string>& values);

void write_trajectory_csv(const std::filesystem::path& path,
                          const Scenario& scenario,
                          const TrajectoryRecord& record);
void write_summary(const std::filesystem::path& path, const RunConfig& config,
                   const RunResult& result);

}  // namespace doco

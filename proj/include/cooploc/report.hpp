#pragma once

#include <filesystem>
#include <vector>

#include "cooploc/metrics.hpp"
#include "cooploc/scenario.hpp"
#include "cooploc/simulation.hpp"

namespace cooploc {

struct TrialResult {
  int trial{0};
  TrajectoryLog baseline;
  TrajectoryLog fused;
  MetricsReport metrics;
};

struct SuiteAggregate {
  double mean{0.0};
  double min{0.0};
  double max{0.0};
};

struct SuiteResult {
  std::vector<TrialResult> trials;
  SuiteAggregate mle_in_baseline;
  SuiteAggregate mle_in_fused;
  SuiteAggregate mle_out_baseline;
  SuiteAggregate mle_out_fused;
  SuiteAggregate improvement_in;
};

/// Runs cfg.sim.trials paired passes (baseline and fused share a trial seed)
/// and aggregates the per-trial metrics. Trial seeds are master_seed + index.
/// enable_rsu=false forces the fused pass to skip roadside units too, for
/// ablation runs.
SuiteResult run_suite(const ScenarioConfig& cfg, bool enable_rsu = true);

/// Writes trajectory.csv, bins.csv, summary.csv, and error_curve.svg.
void write_suite_outputs(const SuiteResult& suite, const ScenarioConfig& cfg,
                         const std::filesystem::path& out_dir);

struct SweepCell {
  double delay_ms{0.0};
  double loss_prob{0.0};
  SuiteResult suite;
};

struct SweepResult {
  std::vector<double> delays_ms;
  std::vector<double> losses;
  std::vector<SweepCell> cells;  // row-major over delays x losses
};

/// Re-runs the suite for every delay/loss combination. Baseline passes are
/// shared across cells since the channel never touches them.
SweepResult run_sweep(const ScenarioConfig& cfg, const std::vector<double>& delays_ms,
                      const std::vector<double>& losses);

/// Writes sweep.csv (long form) and sweep_table.csv (delay x loss matrix of
/// mean fused in-coverage error).
void write_sweep_outputs(const SweepResult& sweep, const std::filesystem::path& out_dir);

}  // namespace cooploc

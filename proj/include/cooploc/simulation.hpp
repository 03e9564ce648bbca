#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cooploc/scenario.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

struct TickRecord {
  double t{0.0};
  double arc{0.0};
  Pose2D truth;
  Pose2D fused;
  double v{0.0};
  double omega{0.0};
  bool in_coverage{false};
  std::optional<Pose2D> ndt;           // noisy fix submitted this tick
  int rsu_delivered{0};                // messages folded in this tick
};

struct TrajectoryLog {
  std::vector<TickRecord> records;
  std::uint64_t rsu_sent{0};
  std::uint64_t rsu_dropped{0};
  std::uint64_t rsu_delivered{0};
  std::uint64_t rsu_rejected_stale{0};
};

/// Runs one pass over the scenario. With enable_rsu=false the roadside units
/// never run and the track is the onboard-only baseline; the onboard noise
/// stream is seeded independently of the roadside ones, so both passes see
/// identical onboard fixes for the same trial seed.
TrajectoryLog run_scenario(const ScenarioConfig& cfg, std::uint64_t trial_seed,
                           bool enable_rsu);

/// Order-sensitive digest of the numeric fields, for determinism checks.
std::uint64_t log_hash(const TrajectoryLog& log);

}  // namespace cooploc

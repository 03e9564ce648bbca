#pragma once

#include <vector>

#include "cooploc/scenario.hpp"
#include "cooploc/simulation.hpp"

namespace cooploc {

/// One road interval with the best (smallest) planar error either track
/// achieved while the vehicle crossed it.
struct BinStat {
  double arc_lo{0.0};
  double arc_hi{0.0};
  bool in_coverage{false};
  bool has_samples{false};
  double min_err_baseline{0.0};
  double min_err_fused{0.0};
};

struct MetricsReport {
  std::vector<BinStat> bins;
  double mle_in_baseline{0.0};   // mean over in-coverage bins of per-bin minima
  double mle_in_fused{0.0};
  double mle_out_baseline{0.0};
  double mle_out_fused{0.0};
  double improvement_in{0.0};    // 1 - fused/baseline over covered bins
  int bins_in{0};
  int bins_out{0};
};

inline constexpr double kBinWidth = 2.0;

/// Bins both tracks by traveled arc and reduces each bin to its minimum
/// planar error. The two logs must describe the same truth track (same
/// scenario, same trial seed); anything else is rejected.
MetricsReport compute_metrics(const TrajectoryLog& baseline, const TrajectoryLog& fused,
                              const ScenarioConfig& cfg);

}  // namespace cooploc

#include "cooploc/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cooploc {

MetricsReport compute_metrics(const TrajectoryLog& baseline, const TrajectoryLog& fused,
                              const ScenarioConfig& cfg) {
  if (baseline.records.size() != fused.records.size()) {
    throw std::invalid_argument("compute_metrics: logs have different lengths");
  }
  for (std::size_t i = 0; i < baseline.records.size(); ++i) {
    const TickRecord& a = baseline.records[i];
    const TickRecord& b = fused.records[i];
    if (a.t != b.t || a.arc != b.arc || a.truth.x != b.truth.x || a.truth.y != b.truth.y ||
        a.truth.yaw != b.truth.yaw) {
      throw std::invalid_argument("compute_metrics: logs describe different truth tracks");
    }
  }
  if (baseline.records.empty()) {
    throw std::invalid_argument("compute_metrics: empty logs");
  }

  double arc_min = std::numeric_limits<double>::infinity();
  double arc_max = -std::numeric_limits<double>::infinity();
  for (const TickRecord& r : baseline.records) {
    arc_min = std::min(arc_min, r.arc);
    arc_max = std::max(arc_max, r.arc);
  }
  const auto first_bin = static_cast<std::int64_t>(std::floor(arc_min / kBinWidth));
  const auto last_bin = static_cast<std::int64_t>(std::floor(arc_max / kBinWidth));
  const std::size_t n_bins = static_cast<std::size_t>(last_bin - first_bin + 1);

  MetricsReport rep;
  rep.bins.resize(n_bins);
  for (std::size_t j = 0; j < n_bins; ++j) {
    BinStat& bin = rep.bins[j];
    bin.arc_lo = static_cast<double>(first_bin + static_cast<std::int64_t>(j)) * kBinWidth;
    bin.arc_hi = bin.arc_lo + kBinWidth;
    bin.min_err_baseline = std::numeric_limits<double>::infinity();
    bin.min_err_fused = std::numeric_limits<double>::infinity();

    const double mid = (bin.arc_lo + bin.arc_hi) / 2.0;
    const Pose2D road_mid = cfg.road.pose_at_arc(mid);
    for (const RsuConfig& rc : cfg.rsus) {
      if (std::hypot(road_mid.x - rc.pose.x, road_mid.y - rc.pose.y) <=
          rc.resolved_effective_range()) {
        bin.in_coverage = true;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < baseline.records.size(); ++i) {
    const TickRecord& rb = baseline.records[i];
    const TickRecord& rf = fused.records[i];
    const auto j = static_cast<std::size_t>(
        static_cast<std::int64_t>(std::floor(rb.arc / kBinWidth)) - first_bin);
    BinStat& bin = rep.bins[j];
    bin.has_samples = true;
    bin.min_err_baseline = std::min(
        bin.min_err_baseline, std::hypot(rb.fused.x - rb.truth.x, rb.fused.y - rb.truth.y));
    bin.min_err_fused = std::min(
        bin.min_err_fused, std::hypot(rf.fused.x - rf.truth.x, rf.fused.y - rf.truth.y));
  }

  double sum_in_b = 0.0, sum_in_f = 0.0, sum_out_b = 0.0, sum_out_f = 0.0;
  for (const BinStat& bin : rep.bins) {
    if (!bin.has_samples) continue;
    if (bin.in_coverage) {
      sum_in_b += bin.min_err_baseline;
      sum_in_f += bin.min_err_fused;
      ++rep.bins_in;
    } else {
      sum_out_b += bin.min_err_baseline;
      sum_out_f += bin.min_err_fused;
      ++rep.bins_out;
    }
  }
  if (rep.bins_in > 0) {
    rep.mle_in_baseline = sum_in_b / rep.bins_in;
    rep.mle_in_fused = sum_in_f / rep.bins_in;
    if (rep.mle_in_baseline > 0.0) {
      rep.improvement_in = 1.0 - rep.mle_in_fused / rep.mle_in_baseline;
    }
  }
  if (rep.bins_out > 0) {
    rep.mle_out_baseline = sum_out_b / rep.bins_out;
    rep.mle_out_fused = sum_out_f / rep.bins_out;
  }
  return rep;
}

}  // namespace cooploc

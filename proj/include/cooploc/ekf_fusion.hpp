#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "cooploc/ekf.hpp"

namespace cooploc {

/// Measurement fusion on a fixed prediction grid with two mechanisms layered
/// on the plain filter:
///
///  * Delay compensation: a measurement stamped in the past is folded in at
///    the tick matching its stamp. The filter keeps a sliding window of
///    per-tick states and replays forward, so the result matches an offline
///    pass that had seen the measurement in stamp order. Measurements older
///    than the horizon (or the window) are rejected.
///
///  * Smooth updates: each accepted measurement is split into smooth_steps
///    partial updates with inflated noise. Every partial is anchored at the
///    measurement's stamp tick (so it never acts as a stale fix), but the
///    partials activate on consecutive wall ticks, each one replaying
///    forward, so the correction phases in over several cycles instead of
///    snapping the track.
///
/// The first submitted measurement initializes the filter and anchors the
/// tick grid at its stamp; unobserved state components start with broad
/// priors.
class EkfFusion {
 public:
  explicit EkfFusion(const EkfTuning& tuning);

  bool initialized() const { return initialized_; }

  /// Steps the filter through every whole tick up to time t. No-op before
  /// initialization.
  void advance_to(double t);

  /// Folds in one measurement. Returns false (and counts it) when the stamp
  /// is older than the horizon or has left the replay window. Throws if the
  /// stamp lies in the filter's future.
  bool submit(const PoseMeasurement& m);

  /// State at the filter's current tick. Throws before initialization.
  const EkfState& current() const;
  double current_time() const;

  std::uint64_t rejected_count() const { return rejected_; }

 private:
  struct TickObs {
    std::uint64_t seq{0};
    PlanarObservation obs;
    double r_scale{1.0};
  };

  void step_once();
  void replay_from(std::int64_t tick);
  EkfState state_before(std::int64_t tick) const;
  void apply_tick_obs(EkfState& state, std::int64_t tick) const;
  void activate(std::int64_t target_tick, TickObs obs);

  EkfTuning tuning_;
  bool initialized_{false};
  double t0_{0.0};
  std::int64_t first_tick_{0};    // tick of post_states_.front()
  std::int64_t current_tick_{0};
  std::int64_t window_ticks_{0};
  EkfState init_prior_;           // state at tick 0 before any update
  std::deque<EkfState> post_states_;
  std::map<std::int64_t, std::vector<TickObs>> schedule_;
  // Partials waiting for their wall tick, keyed by activation tick.
  std::multimap<std::int64_t, std::pair<std::int64_t, TickObs>> pending_;
  std::uint64_t next_seq_{0};
  std::uint64_t rejected_{0};
};

}  // namespace cooploc

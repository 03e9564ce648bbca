#include "cooploc/ekf_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cooploc/covariance.hpp"
#include "cooploc/geometry.hpp"

namespace cooploc {

namespace {
constexpr double kTimeEps = 1e-9;

// Broad priors for state components the first measurement does not pin down.
constexpr double kInitPosStd = 50.0;
constexpr double kInitYawStd = 2.0;
constexpr double kInitVelStd = 5.0;
constexpr double kInitOmegaStd = 1.0;
}  // namespace

EkfFusion::EkfFusion(const EkfTuning& tuning) : tuning_(tuning) {
  tuning_.validate();
  window_ticks_ = static_cast<std::int64_t>(std::ceil(tuning_.horizon_s / tuning_.dt)) +
                  tuning_.smooth_steps + 4;
}

void EkfFusion::advance_to(double t) {
  if (!initialized_) return;
  while (t0_ + static_cast<double>(current_tick_ + 1) * tuning_.dt <= t + kTimeEps) {
    step_once();
  }
}

void EkfFusion::step_once() {
  EkfState state = ekf_predict(post_states_.back(), tuning_.dt, tuning_.process_std);
  ++current_tick_;
  apply_tick_obs(state, current_tick_);
  post_states_.push_back(state);
  while (static_cast<std::int64_t>(post_states_.size()) > window_ticks_) {
    post_states_.pop_front();
    ++first_tick_;
  }
  schedule_.erase(schedule_.begin(), schedule_.lower_bound(first_tick_));

  // Partials whose wall tick has come fold in at their stamp tick and the
  // correction replays forward to the present.
  const auto range = pending_.equal_range(current_tick_);
  for (auto it = range.first; it != range.second; ++it) {
    activate(it->second.first, std::move(it->second.second));
  }
  pending_.erase(range.first, range.second);
}

void EkfFusion::apply_tick_obs(EkfState& state, std::int64_t tick) const {
  const auto it = schedule_.find(tick);
  if (it == schedule_.end()) return;
  for (const TickObs& entry : it->second) {
    state = ekf_update(state, entry.obs, entry.r_scale);
  }
}

EkfState EkfFusion::state_before(std::int64_t tick) const {
  if (tick == 0) return init_prior_;
  EkfState state = post_states_[static_cast<std::size_t>(tick - 1 - first_tick_)];
  return ekf_predict(state, tuning_.dt, tuning_.process_std);
}

void EkfFusion::replay_from(std::int64_t tick) {
  for (std::int64_t k = tick; k <= current_tick_; ++k) {
    EkfState state = state_before(k);
    apply_tick_obs(state, k);
    post_states_[static_cast<std::size_t>(k - first_tick_)] = state;
  }
}

void EkfFusion::activate(std::int64_t target_tick, TickObs obs) {
  if (target_tick < 0 ||
      (target_tick <= first_tick_ && !(target_tick == 0 && first_tick_ == 0))) {
    ++rejected_;  // window slid past the stamp before this partial fired
    return;
  }
  auto& list = schedule_[target_tick];
  const auto pos = std::upper_bound(
      list.begin(), list.end(), obs.seq,
      [](std::uint64_t seq, const TickObs& e) { return seq < e.seq; });
  list.insert(pos, std::move(obs));
  if (target_tick <= current_tick_) {
    replay_from(target_tick);
  }
}

bool EkfFusion::submit(const PoseMeasurement& m) {
  PlanarObservation obs = extract_planar_observation(m);

  if (!initialized_) {
    t0_ = m.stamp;
    init_prior_.t = m.stamp;
    init_prior_.mean = Vec5::Zero();
    Vec5 prior_std;
    prior_std << kInitPosStd, kInitPosStd, kInitYawStd, kInitVelStd, kInitOmegaStd;
    init_prior_.cov = prior_std.array().square().matrix().asDiagonal();

    post_states_.assign(1, init_prior_);
    first_tick_ = 0;
    current_tick_ = 0;
    initialized_ = true;
    // Goes through the schedule like any other update so a later replay of
    // tick 0 sees it again.
    activate(0, {next_seq_++, std::move(obs), 1.0});
    return true;
  }

  const double now = current_time();
  if (m.stamp > now + tuning_.dt + kTimeEps) {
    throw std::invalid_argument("ekf fusion: measurement stamped in the future");
  }
  if (now - m.stamp > tuning_.horizon_s + kTimeEps) {
    ++rejected_;
    return false;
  }
  const auto base_tick =
      static_cast<std::int64_t>(std::llround((m.stamp - t0_) / tuning_.dt));
  const bool replayable = base_tick > first_tick_ || (base_tick == 0 && first_tick_ == 0);
  if (!replayable || base_tick < 0) {
    ++rejected_;
    return false;
  }

  const int steps = tuning_.smooth_steps;
  const double scale = static_cast<double>(steps);
  activate(base_tick, {next_seq_++, obs, scale});
  for (int i = 1; i < steps; ++i) {
    pending_.emplace(current_tick_ + i,
                     std::make_pair(base_tick, TickObs{next_seq_++, obs, scale}));
  }
  return true;
}

const EkfState& EkfFusion::current() const {
  if (!initialized_) {
    throw std::runtime_error("ekf fusion: not initialized");
  }
  return post_states_.back();
}

double EkfFusion::current_time() const {
  if (!initialized_) {
    throw std::runtime_error("ekf fusion: not initialized");
  }
  return t0_ + static_cast<double>(current_tick_) * tuning_.dt;
}

}  // namespace cooploc

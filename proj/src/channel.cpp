#include "cooploc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cooploc {

void ChannelConfig::validate() const {
  if (!(delay_s >= 0.0) || !std::isfinite(delay_s)) {
    throw std::invalid_argument("channel: delay must be finite and nonnegative");
  }
  if (!(loss_prob >= 0.0) || !(loss_prob <= 1.0)) {
    throw std::invalid_argument("channel: loss probability must lie in [0, 1]");
  }
}

Channel::Channel(const ChannelConfig& config) : config_(config), rng_(make_rng(config.seed)) {
  config_.validate();
}

void Channel::send(const PoseMeasurement& payload, double now) {
  ++sent_;
  const std::uint64_t seq = next_seq_++;
  const double draw = uniform01(rng_);
  if (draw < config_.loss_prob) {
    ++dropped_;
    return;
  }
  pending_.push_back({payload, now, now + config_.delay_s, seq});
}

std::vector<ChannelEvent> Channel::drain(double now) {
  std::vector<ChannelEvent> due;
  auto split = std::stable_partition(pending_.begin(), pending_.end(),
                                     [&](const ChannelEvent& e) { return e.deliver_time > now; });
  due.assign(split, pending_.end());
  pending_.erase(split, pending_.end());
  std::sort(due.begin(), due.end(), [](const ChannelEvent& a, const ChannelEvent& b) {
    if (a.deliver_time != b.deliver_time) return a.deliver_time < b.deliver_time;
    return a.seq < b.seq;
  });
  delivered_ += due.size();
  return due;
}

}  // namespace cooploc

#pragma once

#include <cstdint>
#include <vector>

#include "cooploc/rng.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Constant-delay, independent-loss link between a roadside unit and the
/// vehicle's fusion stack.
struct ChannelConfig {
  double delay_s{0.0};
  double loss_prob{0.0};
  std::uint64_t seed{0};

  void validate() const;
};

struct ChannelEvent {
  PoseMeasurement payload;
  double send_time{0.0};
  double deliver_time{0.0};
  std::uint64_t seq{0};
};

class Channel {
 public:
  explicit Channel(const ChannelConfig& config);

  /// Queues (or drops) one message. Every send consumes exactly one random
  /// draw, so toggling the loss rate never shifts later decisions.
  void send(const PoseMeasurement& payload, double now);

  /// Returns everything due by `now`, ordered by (deliver_time, seq), and
  /// removes it from the queue.
  std::vector<ChannelEvent> drain(double now);

  std::uint64_t sent_count() const { return sent_; }
  std::uint64_t dropped_count() const { return dropped_; }
  std::uint64_t delivered_count() const { return delivered_; }
  std::size_t pending_count() const { return pending_.size(); }

 private:
  ChannelConfig config_;
  std::mt19937_64 rng_;
  std::vector<ChannelEvent> pending_;
  std::uint64_t sent_{0};
  std::uint64_t dropped_{0};
  std::uint64_t delivered_{0};
  std::uint64_t next_seq_{0};
};

}  // namespace cooploc

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cooploc/ekf.hpp"
#include "cooploc/scene.hpp"
#include "cooploc/sensor_model.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Configuration problem, carrying the offending field's path (for example
/// "rsus[0].mount_height").
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Straight road segment traversed at constant speed.
struct RoadConfig {
  Point2 start;
  Point2 end;
  double speed_mps{8.0};

  double length() const;
  /// Pose at the given arc length from the start (extrapolates past the end).
  Pose2D pose_at_arc(double arc) const;
};

struct VehicleConfig {
  VehicleSpec spec;
  double start_arc{0.0};
  bool mirrors{false};
};

/// One roadside unit. Optional fields override the deployed sensor's
/// defaults; a custom sensor must spell out elevations, effective range, and
/// reported sigma since it has no catalog entry.
struct RsuConfig {
  Pose2D pose;
  double mount_height{2.0};
  SensorModelId sensor_id{SensorModelId::kVlp32c};
  std::vector<double> custom_elevations_rad;
  std::optional<double> effective_range;
  std::optional<double> reported_sigma_xy;
  std::optional<double> range_noise_sigma;
  std::optional<double> azimuth_step_deg;
  std::optional<double> max_range;

  SensorModel build_model() const;
  double resolved_effective_range() const;
  double resolved_reported_sigma() const;
};

/// Arc interval where the vehicle's own scan matching degrades (occlusion,
/// sparse features). True noise scales by `multiplier` inside, blending
/// linearly back to 1 over blend_m outside each edge.
struct VulnerableZone {
  double arc_begin{0.0};
  double arc_end{0.0};
  double multiplier{1.0};
  double blend_m{5.0};

  double noise_scale(double arc) const;
};

/// Onboard scan-matching surrogate: true noise profile along the road plus
/// the fixed covariance it reports to the filter.
struct NdtProfile {
  double sigma_xy{0.03};
  double sigma_yaw{0.005};
  double rate_hz{10.0};
  VulnerableZone zone;
};

struct ChannelSettings {
  double delay_ms{0.0};
  double loss_prob{0.0};
};

struct SimSettings {
  double duration_s{30.0};
  std::uint64_t master_seed{1};
  int trials{10};
};

struct ScenarioConfig {
  RoadConfig road;
  VehicleConfig vehicle;
  std::vector<RsuConfig> rsus;
  NdtProfile ndt;
  BackgroundScene scene;
  ChannelSettings channel;
  EkfTuning ekf;
  SimSettings sim;

  void validate() const;

  /// Swaps every unit to the named sensor and drops per-unit effective-range
  /// and reported-sigma overrides so the new model's defaults apply.
  void override_sensor(SensorModelId id);
};

ScenarioConfig parse_scenario(const std::string& json_text, const std::string& source_name);
ScenarioConfig load_scenario(const std::filesystem::path& file);

}  // namespace cooploc

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cooploc/geometry.hpp"

namespace cooploc {

enum class SensorModelId { kVlp16, kVlp32c, kCustom };

std::string to_string(SensorModelId id);
SensorModelId sensor_model_from_string(const std::string& name);

inline constexpr double kDefaultAzimuthStepRad = 0.4 * kPi / 180.0;
inline constexpr double kDefaultRangeNoiseSigma = 0.02;

/// Spinning LiDAR description: per-channel elevation angles plus firing
/// geometry and range noise.
struct SensorModel {
  SensorModelId id{SensorModelId::kCustom};
  std::vector<double> elevations_rad;  // sorted ascending
  double azimuth_step_rad{kDefaultAzimuthStepRad};
  double max_range_m{100.0};
  double range_noise_sigma_m{0.0};
  double rate_hz{10.0};

  void validate() const;
};

/// Directory holding the checked-in beam tables. Resolution order:
/// COOPLOC_CONFIG_DIR environment variable, then the build-time default.
std::filesystem::path default_config_dir();

/// Loads a plain-text beam table: one elevation in degrees per line.
/// Returns angles in radians, sorted ascending.
std::vector<double> load_beam_table(const std::filesystem::path& file);

/// Elevation table for a named model, read from its checked-in config file.
/// kCustom has no table and is rejected; custom rigs supply elevations directly.
std::vector<double> beam_table(SensorModelId id,
                               const std::filesystem::path& config_dir = default_config_dir());

/// Pipeline gate: beyond this sensor-to-vehicle distance the roadside unit
/// does not attempt pose estimation (30 m for VLP-16, 50 m for VLP-32C).
double default_effective_range(SensorModelId id);

/// Builds a fully-populated model for a named sensor.
SensorModel make_sensor_model(SensorModelId id,
                              const std::filesystem::path& config_dir = default_config_dir());

/// Horizontal standard deviation the roadside unit reports for its pose
/// estimates, per deployed model.
double rsu_reported_sigma_xy(SensorModelId id);

}  // namespace cooploc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cooploc/ray.hpp"
#include "cooploc/scene.hpp"
#include "cooploc/sensor_model.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Where the spinning unit sits: plan-view pose plus height of the optical
/// center above the scene ground plane.
struct ScanMount {
  Pose2D pose;
  double height{2.0};
};

/// Synthesizes one full revolution. Points come back in the sensor frame
/// (x forward along mount yaw, z up), azimuth-major and elevation-minor, so
/// the same scene always yields the same point order. Range noise draws one
/// gaussian per returned point; missed rays consume nothing.
///
/// `surfaces`, when given, receives one entry per returned point identifying
/// what the ray ended on (ground, clutter, vehicle body, mirror stub).
PointCloud generate_scan(const SensorModel& sensor, const ScanMount& mount,
                         const BackgroundScene& scene, const VehicleBoxState* vehicle,
                         std::uint64_t seed, double stamp, const std::string& frame_id,
                         std::vector<SurfaceKind>* surfaces = nullptr);

/// Map-frame position of the sensor's optical center.
Point3 sensor_origin(const ScanMount& mount, const BackgroundScene& scene);

}  // namespace cooploc

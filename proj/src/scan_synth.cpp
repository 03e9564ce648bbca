#include "cooploc/scan_synth.hpp"

#include <cmath>

#include "cooploc/rng.hpp"

namespace cooploc {

Point3 sensor_origin(const ScanMount& mount, const BackgroundScene& scene) {
  return {mount.pose.x, mount.pose.y, scene.ground_z + mount.height};
}

PointCloud generate_scan(const SensorModel& sensor, const ScanMount& mount,
                         const BackgroundScene& scene, const VehicleBoxState* vehicle,
                         std::uint64_t seed, double stamp, const std::string& frame_id,
                         std::vector<SurfaceKind>* surfaces) {
  sensor.validate();
  if (!(mount.height > 0.0)) {
    throw std::invalid_argument("generate_scan: mount height must be positive");
  }

  const Point3 origin = sensor_origin(mount, scene);
  const int n_cols = static_cast<int>(std::ceil(2.0 * kPi / sensor.azimuth_step_rad - 1e-9));
  const double cy = std::cos(mount.pose.yaw);
  const double sy = std::sin(mount.pose.yaw);

  auto rng = make_rng(seed);
  PointCloud cloud;
  cloud.frame_id = frame_id;
  cloud.stamp = stamp;
  cloud.points.reserve(static_cast<std::size_t>(n_cols) * sensor.elevations_rad.size() / 4);
  if (surfaces) surfaces->clear();

  for (int col = 0; col < n_cols; ++col) {
    const double az = col * sensor.azimuth_step_rad;
    const double ca = std::cos(az);
    const double sa = std::sin(az);
    for (double el : sensor.elevations_rad) {
      const double ce = std::cos(el);
      const double se = std::sin(el);
      // Beam direction in the sensor frame, then rotated into the map frame.
      const Point3 d_sensor{ce * ca, ce * sa, se};
      const Point3 d_map{cy * d_sensor.x - sy * d_sensor.y,
                         sy * d_sensor.x + cy * d_sensor.y, d_sensor.z};
      const auto hit = cast_ray(origin, d_map, scene, vehicle, sensor.max_range_m);
      if (!hit) continue;
      double r = hit->distance;
      if (sensor.range_noise_sigma_m > 0.0) {
        r += gauss(rng, sensor.range_noise_sigma_m);
      }
      if (r <= 0.0) continue;
      cloud.points.push_back({r * d_sensor.x, r * d_sensor.y, r * d_sensor.z});
      if (surfaces) surfaces->push_back(hit->surface);
    }
  }
  return cloud;
}

}  // namespace cooploc

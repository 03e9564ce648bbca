#pragma once

#include <string>
#include <vector>

#include "cooploc/covariance.hpp"
#include "cooploc/geometry.hpp"

namespace cooploc {

/// One LiDAR sweep worth of points, expressed in the named frame.
struct PointCloud {
  std::string frame_id;
  double stamp{0.0};  // simulation clock, seconds
  std::vector<Point3> points;
};

enum class MeasurementSource { kRsu, kNdt };

/// Ground-truth chassis dimensions announced by the vehicle at scenario start.
struct VehicleSpec {
  double length{0.0};  // meters, length >= width > 0
  double width{0.0};
  double height{0.0};
  std::string id;

  void validate() const;
};

/// A timestamped planar pose estimate plus the covariance the source reports.
struct PoseMeasurement {
  Pose2D pose;
  CovarianceSpec cov;
  double stamp{0.0};
  MeasurementSource source{MeasurementSource::kNdt};

  /// Checks stamp, covariance positivity, and that a roadside source leaves
  /// z/roll/pitch/yaw unobserved.
  void validate() const;
};

}  // namespace cooploc

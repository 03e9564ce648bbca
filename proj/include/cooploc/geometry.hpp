#pragma once

#include <cmath>

namespace cooploc {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

struct Point2 {
  double x{0.0};
  double y{0.0};
};

struct Point3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};
};

/// Planar pose in a right-handed, z-up frame; yaw is counter-clockwise from +x.
struct Pose2D {
  double x{0.0};
  double y{0.0};
  double yaw{0.0};
};

/// Wraps an angle into (-pi, pi]. Throws std::invalid_argument on non-finite input.
double normalize_yaw(double a);

/// Shortest signed angular difference a - b, wrapped into (-pi, pi].
double angle_diff(double a, double b);

/// Expresses `child_in_parent` in the frame the parent pose is expressed in.
Pose2D compose_pose(const Pose2D& parent, const Pose2D& child_in_parent);

/// Inverse transform: compose_pose(p, invert_pose(p)) is the identity pose.
Pose2D invert_pose(const Pose2D& p);

/// Maps a point given in `frame` coordinates into the frame's parent coordinates.
Point2 transform_point(const Pose2D& frame, const Point2& p);

/// Maps a point given in the frame's parent coordinates into `frame` coordinates.
Point2 inverse_transform_point(const Pose2D& frame, const Point2& p);

inline double distance2(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace cooploc

#include "cooploc/geometry.hpp"

#include <stdexcept>

namespace cooploc {

double normalize_yaw(double a) {
  if (!std::isfinite(a)) {
    throw std::invalid_argument("normalize_yaw: non-finite angle");
  }
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r <= 0.0) {
    r += 2.0 * kPi;
  }
  return r - kPi;
}

double angle_diff(double a, double b) { return normalize_yaw(a - b); }

Pose2D compose_pose(const Pose2D& parent, const Pose2D& child_in_parent) {
  const double c = std::cos(parent.yaw);
  const double s = std::sin(parent.yaw);
  return Pose2D{parent.x + c * child_in_parent.x - s * child_in_parent.y,
                parent.y + s * child_in_parent.x + c * child_in_parent.y,
                normalize_yaw(parent.yaw + child_in_parent.yaw)};
}

Pose2D invert_pose(const Pose2D& p) {
  const double c = std::cos(p.yaw);
  const double s = std::sin(p.yaw);
  return Pose2D{-(c * p.x + s * p.y), -(-s * p.x + c * p.y), normalize_yaw(-p.yaw)};
}

Point2 transform_point(const Pose2D& frame, const Point2& p) {
  const double c = std::cos(frame.yaw);
  const double s = std::sin(frame.yaw);
  return Point2{frame.x + c * p.x - s * p.y, frame.y + s * p.x + c * p.y};
}

Point2 inverse_transform_point(const Pose2D& frame, const Point2& p) {
  const double dx = p.x - frame.x;
  const double dy = p.y - frame.y;
  const double c = std::cos(frame.yaw);
  const double s = std::sin(frame.yaw);
  return Point2{c * dx + s * dy, -s * dx + c * dy};
}

}  // namespace cooploc

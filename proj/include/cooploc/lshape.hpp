#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "cooploc/geometry.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Rectangle fitted to a plan-view cluster. heading lies in [0, pi/2) and
/// names the direction of the first edge axis e1 = (cos h, sin h); e2 is its
/// counter-clockwise perpendicular.
struct OrientedRect {
  Point2 center;
  double heading{0.0};
  double extent_e1{0.0};
  double extent_e2{0.0};

  /// Corner order: counter-clockwise starting from center - h1 - h2.
  std::array<Point2, 4> corners() const;
};

/// Variance criterion for one candidate orientation: each point is assigned
/// to whichever rectangle edge pair it is closer to, and the score is the sum
/// of the two groups' distance variances. Lower is better.
double lshape_criterion(const std::vector<Point2>& points, double theta);

/// Search-based rectangle fit: scans theta over [0, pi/2) on a fixed grid and
/// keeps the orientation with the strictly smallest criterion (the smallest
/// theta wins ties). Throws on fewer than 3 points or a collinear cluster.
OrientedRect fit_lshape(const std::vector<Point2>& points,
                        double angle_step_rad = deg2rad(1.0));

/// Index of the fitted corner closest to the observer, lowest index on ties.
std::size_t select_alignment_point(const OrientedRect& rect, const Point2& sensor_pos);

/// Grows the fitted rectangle to the vehicle's catalog footprint while
/// keeping the corner nearest the sensor fixed: that corner faces the sensor
/// and is the best-observed part of the cluster, whereas the far sides are
/// truncated by self-occlusion. With heading_hint given, the length axis is
/// whichever fitted axis lies within 45 degrees of the hint; truncation can
/// make the extents alone ambiguous (a clipped side can match the catalog
/// width exactly), so the hint wins whenever it is available. Without a hint
/// the length axis goes to whichever extent matches the catalog dimensions
/// best (the larger extent on ties). The 180-degree yaw ambiguity resolves
/// toward the hint when given, otherwise yaw is reported in [0, pi).
struct RefinedPose {
  Pose2D pose;                 // vehicle center, yaw along its length axis
  std::size_t anchor_corner{0};
};

RefinedPose refine_with_dimensions(const OrientedRect& rect, const VehicleSpec& spec,
                                   const Point2& sensor_pos,
                                   std::optional<double> heading_hint = std::nullopt);

/// Plan-view corners of a full-size vehicle box at the given pose, in the
/// same counter-clockwise order OrientedRect uses.
std::array<Point2, 4> vehicle_footprint_corners(const Pose2D& pose, const VehicleSpec& spec);

}  // namespace cooploc

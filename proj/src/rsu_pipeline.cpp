#include "cooploc/rsu_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cooploc/covariance.hpp"

namespace cooploc {

std::optional<std::vector<Point2>> select_lfa_points(const std::vector<Point3>& points,
                                                     double ground_z, double height_cutoff,
                                                     std::size_t cap, std::size_t min_points) {
  if (!(height_cutoff > 0.0)) {
    throw std::invalid_argument("select_lfa_points: height cutoff must be positive");
  }
  if (cap < min_points) {
    throw std::invalid_argument("select_lfa_points: cap must be at least min_points");
  }

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].z - ground_z < height_cutoff) eligible.push_back(i);
  }
  if (eligible.size() < min_points) return std::nullopt;

  if (eligible.size() > cap) {
    std::stable_sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
      return points[a].z < points[b].z;
    });
    eligible.resize(cap);
    std::sort(eligible.begin(), eligible.end());
  }

  std::vector<Point2> plan;
  plan.reserve(eligible.size());
  for (std::size_t i : eligible) {
    plan.push_back({points[i].x, points[i].y});
  }
  return plan;
}

void RsuContext::validate() const {
  vehicle.validate();
  if (!(mount.height > 0.0)) {
    throw std::invalid_argument("rsu context: mount height must be positive");
  }
  if (!(sigma_xy > 0.0)) {
    throw std::invalid_argument("rsu context: reported sigma must be positive");
  }
  if (!(effective_range > 0.0)) {
    throw std::invalid_argument("rsu context: effective range must be positive");
  }
  if (!(roi_radius > 0.0) || !(match_threshold > 0.0) || !(height_cutoff > 0.0)) {
    throw std::invalid_argument("rsu context: filter parameters must be positive");
  }
  if (min_points < 3) {
    throw std::invalid_argument("rsu context: min_points must be at least 3");
  }
  if (lfa_cap < min_points) {
    throw std::invalid_argument("rsu context: lfa_cap must be at least min_points");
  }
  if (!(angle_step > 0.0) || !(angle_step <= kPi / 2.0)) {
    throw std::invalid_argument("rsu context: angle step must lie in (0, pi/2]");
  }
  if (!(min_span_fraction >= 0.0) || min_span_fraction >= 1.0) {
    throw std::invalid_argument("rsu context: span fraction must lie in [0, 1)");
  }
}

std::optional<RsuMeasurement> estimate_vehicle_pose(const RsuContext& ctx,
                                                    const PointCloud& live_scan) {
  ctx.validate();
  if (!ctx.ref_position) return std::nullopt;

  const double dx = ctx.ref_position->x - ctx.mount.pose.x;
  const double dy = ctx.ref_position->y - ctx.mount.pose.y;
  if (std::hypot(dx, dy) > ctx.effective_range) return std::nullopt;

  // From here on everything runs in the sensor frame: the unit sits at the
  // origin, mount.height above the ground plane.
  const Point2 ref_sensor = inverse_transform_point(ctx.mount.pose, *ctx.ref_position);
  const auto foreground = filter_foreground(ctx.background, live_scan.points, ref_sensor,
                                            ctx.roi_radius, ctx.match_threshold);
  const auto lfa = select_lfa_points(foreground, -ctx.mount.height, ctx.height_cutoff,
                                     ctx.lfa_cap, ctx.min_points);
  if (!lfa) return std::nullopt;

  OrientedRect rect;
  try {
    rect = fit_lshape(*lfa, ctx.angle_step);
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // collinear cluster, no rectangle defined
  }

  std::optional<double> hint_sensor;
  if (ctx.heading_hint) {
    hint_sensor = normalize_yaw(*ctx.heading_hint - ctx.mount.pose.yaw);
  }
  const RefinedPose refined = refine_with_dimensions(rect, ctx.vehicle, {0.0, 0.0}, hint_sensor);

  // The anchored corner is only trustworthy when the cluster reaches a real
  // extreme of the body: either a full side (both ends seen) or a full end
  // face (the perpendicular edge pins the corner). A short band cut out of
  // the middle of one face, which a near-mounted unit's lowest beam can
  // produce, constrains neither growth direction; drop such frames.
  {
    const double cy = std::cos(refined.pose.yaw), sy = std::sin(refined.pose.yaw);
    double u_min = std::numeric_limits<double>::infinity(), u_max = -u_min;
    double v_min = u_min, v_max = -u_min;
    for (const Point2& p : *lfa) {
      const double u = cy * p.x + sy * p.y;
      const double v = -sy * p.x + cy * p.y;
      u_min = std::min(u_min, u);
      u_max = std::max(u_max, u);
      v_min = std::min(v_min, v);
      v_max = std::max(v_max, v);
    }
    if (u_max - u_min < ctx.min_span_fraction * ctx.vehicle.length &&
        v_max - v_min < ctx.min_span_fraction * ctx.vehicle.width) {
      return std::nullopt;
    }
  }

  // When the cluster covers a healthy part of an L shape, growing from the
  // anchor corner keeps every observed point inside the full-size box. A
  // degenerate cluster (one short edge band seen from a bad angle) can pick
  // the wrong growth direction, which leaves the points far outside; refuse
  // to report rather than hand the filter a pose that is off by car lengths.
  {
    const double cy = std::cos(refined.pose.yaw), sy = std::sin(refined.pose.yaw);
    const double half_l = ctx.vehicle.length / 2.0 + ctx.containment_margin;
    const double half_w = ctx.vehicle.width / 2.0 + ctx.containment_margin;
    for (const Point2& p : *lfa) {
      const double px = p.x - refined.pose.x, py = p.y - refined.pose.y;
      const double u = cy * px + sy * py, v = -sy * px + cy * py;
      if (std::abs(u) > half_l || std::abs(v) > half_w) return std::nullopt;
    }
  }

  RsuMeasurement out;
  out.measurement.pose = compose_pose(ctx.mount.pose, refined.pose);
  out.measurement.cov = rsu_covariance(ctx.sigma_xy);
  out.measurement.stamp = live_scan.stamp;
  out.measurement.source = MeasurementSource::kRsu;
  out.measurement.validate();

  out.diagnostics.lfa_point_count = lfa->size();
  out.diagnostics.corner_index = refined.anchor_corner;
  out.diagnostics.raw_rect = rect;
  const Point2 corner_sensor = rect.corners()[refined.anchor_corner];
  out.diagnostics.alignment_point = transform_point(ctx.mount.pose, corner_sensor);
  return out;
}

}  // namespace cooploc

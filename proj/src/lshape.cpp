#include "cooploc/lshape.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cooploc {

namespace {

double population_variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

/// Standard deviation of the cluster along its least-spread direction;
/// near zero means the points are collinear and no rectangle is defined.
double min_principal_std(const std::vector<Point2>& points) {
  const double n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mx;
    const double dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  sxx /= n;
  sxy /= n;
  syy /= n;
  const double half_trace = (sxx + syy) / 2.0;
  const double det_term = std::sqrt((sxx - syy) * (sxx - syy) / 4.0 + sxy * sxy);
  const double lambda_min = half_trace - det_term;
  return std::sqrt(std::max(lambda_min, 0.0));
}

struct Projection {
  std::vector<double> c1;
  std::vector<double> c2;
  double c1_min, c1_max, c2_min, c2_max;
};

Projection project(const std::vector<Point2>& points, double theta) {
  Projection pr;
  pr.c1.reserve(points.size());
  pr.c2.reserve(points.size());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  pr.c1_min = pr.c2_min = std::numeric_limits<double>::infinity();
  pr.c1_max = pr.c2_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double a = c * p.x + s * p.y;
    const double b = -s * p.x + c * p.y;
    pr.c1.push_back(a);
    pr.c2.push_back(b);
    pr.c1_min = std::min(pr.c1_min, a);
    pr.c1_max = std::max(pr.c1_max, a);
    pr.c2_min = std::min(pr.c2_min, b);
    pr.c2_max = std::max(pr.c2_max, b);
  }
  return pr;
}

}  // namespace

std::array<Point2, 4> OrientedRect::corners() const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  const double h1x = extent_e1 / 2.0 * c;
  const double h1y = extent_e1 / 2.0 * s;
  const double h2x = extent_e2 / 2.0 * -s;
  const double h2y = extent_e2 / 2.0 * c;
  return {{{center.x - h1x - h2x, center.y - h1y - h2y},
           {center.x + h1x - h2x, center.y + h1y - h2y},
           {center.x + h1x + h2x, center.y + h1y + h2y},
           {center.x - h1x + h2x, center.y - h1y + h2y}}};
}

double lshape_criterion(const std::vector<Point2>& points, double theta) {
  if (points.empty()) {
    throw std::invalid_argument("lshape_criterion: no points");
  }
  const Projection pr = project(points, theta);
  std::vector<double> near_e1;
  std::vector<double> near_e2;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d1 = std::min(pr.c1_max - pr.c1[i], pr.c1[i] - pr.c1_min);
    const double d2 = std::min(pr.c2_max - pr.c2[i], pr.c2[i] - pr.c2_min);
    if (d1 < d2) {
      near_e1.push_back(d1);
    } else {
      near_e2.push_back(d2);
    }
  }
  return population_variance(near_e1) + population_variance(near_e2);
}

OrientedRect fit_lshape(const std::vector<Point2>& points, double angle_step_rad) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_lshape: need at least 3 points");
  }
  if (!(angle_step_rad > 0.0) || !(angle_step_rad <= kPi / 2.0)) {
    throw std::invalid_argument("fit_lshape: angle step must lie in (0, pi/2]");
  }
  if (min_principal_std(points) < 1e-6) {
    throw std::invalid_argument("fit_lshape: points are collinear");
  }

  double best_theta = 0.0;
  double best_score = std::numeric_limits<double>::infinity();
  for (double theta = 0.0; theta < kPi / 2.0 - 1e-12; theta += angle_step_rad) {
    const double score = lshape_criterion(points, theta);
    if (score < best_score) {
      best_score = score;
      best_theta = theta;
    }
  }

  const Projection pr = project(points, best_theta);
  const double m1 = (pr.c1_min + pr.c1_max) / 2.0;
  const double m2 = (pr.c2_min + pr.c2_max) / 2.0;
  const double c = std::cos(best_theta);
  const double s = std::sin(best_theta);
  OrientedRect rect;
  rect.center = {m1 * c - m2 * s, m1 * s + m2 * c};
  rect.heading = best_theta;
  rect.extent_e1 = pr.c1_max - pr.c1_min;
  rect.extent_e2 = pr.c2_max - pr.c2_min;
  return rect;
}

std::size_t select_alignment_point(const OrientedRect& rect, const Point2& sensor_pos) {
  const auto corners = rect.corners();
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const double dx = corners[i].x - sensor_pos.x;
    const double dy = corners[i].y - sensor_pos.y;
    const double d_sq = dx * dx + dy * dy;
    if (d_sq < best_sq) {
      best_sq = d_sq;
      best = i;
    }
  }
  return best;
}

RefinedPose refine_with_dimensions(const OrientedRect& rect, const VehicleSpec& spec,
                                   const Point2& sensor_pos,
                                   std::optional<double> heading_hint) {
  spec.validate();
  const std::size_t anchor = select_alignment_point(rect, sensor_pos);
  const Point2 corner = rect.corners()[anchor];

  bool length_on_e1;
  if (heading_hint) {
    // Angle between the hint and e1, folded onto [0, pi/2].
    double d = std::abs(angle_diff(*heading_hint, rect.heading));
    if (d > kPi / 2.0) d = kPi - d;
    length_on_e1 = d <= kPi / 4.0;
  } else {
    const double cost_keep = std::abs(rect.extent_e1 - spec.length) +
                             std::abs(rect.extent_e2 - spec.width);
    const double cost_swap = std::abs(rect.extent_e1 - spec.width) +
                             std::abs(rect.extent_e2 - spec.length);
    if (cost_keep < cost_swap) {
      length_on_e1 = true;
    } else if (cost_swap < cost_keep) {
      length_on_e1 = false;
    } else {
      length_on_e1 = rect.extent_e1 >= rect.extent_e2;
    }
  }
  const double d1 = length_on_e1 ? spec.length : spec.width;
  const double d2 = length_on_e1 ? spec.width : spec.length;

  // Grow inward from the anchored corner, away from the sensor side.
  const double s1 = (anchor == 0 || anchor == 3) ? 1.0 : -1.0;
  const double s2 = (anchor == 0 || anchor == 1) ? 1.0 : -1.0;
  const double c = std::cos(rect.heading);
  const double s = std::sin(rect.heading);
  const double cx = corner.x + s1 * (d1 / 2.0) * c + s2 * (d2 / 2.0) * -s;
  const double cy = corner.y + s1 * (d1 / 2.0) * s + s2 * (d2 / 2.0) * c;

  double yaw = length_on_e1 ? rect.heading : rect.heading + kPi / 2.0;
  if (heading_hint && std::abs(angle_diff(yaw, *heading_hint)) > kPi / 2.0) {
    yaw += kPi;
  }
  return {{cx, cy, normalize_yaw(yaw)}, anchor};
}

std::array<Point2, 4> vehicle_footprint_corners(const Pose2D& pose, const VehicleSpec& spec) {
  OrientedRect rect;
  rect.center = {pose.x, pose.y};
  rect.heading = pose.yaw;
  rect.extent_e1 = spec.length;
  rect.extent_e2 = spec.width;
  return rect.corners();
}

}  // namespace cooploc

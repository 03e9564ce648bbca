#include "cooploc/background_filter.hpp"

#include <stdexcept>

namespace cooploc {

BackgroundIndex::BackgroundIndex(const PointCloud& reference) {
  if (reference.points.empty()) {
    throw std::invalid_argument("background index: reference scan is empty");
  }
  tree_ = std::make_shared<const KdTree3>(reference.points);
}

BackgroundIndex build_background_index(const PointCloud& reference) {
  return BackgroundIndex(reference);
}

std::vector<Point3> filter_foreground(const BackgroundIndex& background,
                                      const std::vector<Point3>& live,
                                      const Point2& roi_center, double roi_radius,
                                      double match_threshold) {
  if (!(roi_radius > 0.0)) {
    throw std::invalid_argument("filter_foreground: roi radius must be positive");
  }
  if (!(match_threshold > 0.0)) {
    throw std::invalid_argument("filter_foreground: match threshold must be positive");
  }
  std::vector<Point3> foreground;
  for (const Point3& p : live) {
    const double dx = p.x - roi_center.x;
    const double dy = p.y - roi_center.y;
    if (dx * dx + dy * dy > roi_radius * roi_radius) continue;
    if (background.nearest_distance(p) > match_threshold) {
      foreground.push_back(p);
    }
  }
  return foreground;
}

}  // namespace cooploc

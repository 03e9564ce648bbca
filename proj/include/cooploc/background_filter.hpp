#pragma once

#include <memory>
#include <vector>

#include "cooploc/kdtree.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Nearest-neighbor index over a vehicle-free reference scan, queried to
/// decide whether a live point belongs to the background.
class BackgroundIndex {
 public:
  explicit BackgroundIndex(const PointCloud& reference);

  double nearest_distance(const Point3& p) const { return tree_->nearest_distance(p); }
  std::size_t size() const { return tree_->size(); }

 private:
  std::shared_ptr<const KdTree3> tree_;
};

BackgroundIndex build_background_index(const PointCloud& reference);

/// Keeps live points that (a) fall within roi_radius of roi_center in plan
/// view and (b) sit farther than match_threshold from every reference point.
/// The reference lookup only runs for points already inside the region of
/// interest. Survivors keep their input order.
std::vector<Point3> filter_foreground(const BackgroundIndex& background,
                                      const std::vector<Point3>& live,
                                      const Point2& roi_center, double roi_radius,
                                      double match_threshold);

}  // namespace cooploc

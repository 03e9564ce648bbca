#pragma once

#include <cstddef>
#include <vector>

#include "cooploc/geometry.hpp"

namespace cooploc {

/// Exact 3-d nearest-neighbor index over a fixed point set.
class KdTree3 {
 public:
  explicit KdTree3(std::vector<Point3> points);

  /// Euclidean distance from q to the closest indexed point.
  double nearest_distance(const Point3& q) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    int point{-1};
    int left{-1};
    int right{-1};
    int axis{0};
  };

  int build(int begin, int end, int depth);
  void search(int node, const Point3& q, double& best_sq) const;

  std::vector<Point3> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_{-1};
};

}  // namespace cooploc

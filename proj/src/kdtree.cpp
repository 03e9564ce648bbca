#include "cooploc/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cooploc {

namespace {

inline double coord(const Point3& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

inline double dist_sq(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

KdTree3::KdTree3(std::vector<Point3> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("kdtree: point set is empty");
  }
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(points_.size());
  root_ = build(0, static_cast<int>(order_.size()), 0);
}

int KdTree3::build(int begin, int end, int depth) {
  if (begin >= end) return -1;
  const int axis = depth % 3;
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) { return coord(points_[a], axis) < coord(points_[b], axis); });
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({order_[mid], -1, -1, axis});
  nodes_[id].left = build(begin, mid, depth + 1);
  nodes_[id].right = build(mid + 1, end, depth + 1);
  return id;
}

void KdTree3::search(int node, const Point3& q, double& best_sq) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  best_sq = std::min(best_sq, dist_sq(points_[n.point], q));
  const double delta = coord(q, n.axis) - coord(points_[n.point], n.axis);
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  search(near, q, best_sq);
  if (delta * delta < best_sq) {
    search(far, q, best_sq);
  }
}

double KdTree3::nearest_distance(const Point3& q) const {
  double best_sq = std::numeric_limits<double>::infinity();
  search(root_, q, best_sq);
  return std::sqrt(best_sq);
}

}  // namespace cooploc

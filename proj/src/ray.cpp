#include "cooploc/ray.hpp"

#include <cmath>
#include <limits>

namespace cooploc {

std::optional<double> intersect_aabb(const Point3& origin, const Point3& dir,
                                     const Aabb& box, double t_min) {
  // First parameter t >= t_min at which origin + t*dir lies inside the
  // closed box. Standard slab test.
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  const double o[3] = {origin.x, origin.y, origin.z};
  const double d[3] = {dir.x, dir.y, dir.z};
  const double lo[3] = {box.min.x, box.min.y, box.min.z};
  const double hi[3] = {box.max.x, box.max.y, box.max.z};
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < lo[axis] || o[axis] > hi[axis]) return std::nullopt;
      continue;
    }
    double ta = (lo[axis] - o[axis]) / d[axis];
    double tb = (hi[axis] - o[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    if (ta > t_lo) t_lo = ta;
    if (tb < t_hi) t_hi = tb;
    if (t_lo > t_hi) return std::nullopt;
  }
  if (t_hi < t_min) return std::nullopt;
  return std::max(t_lo, t_min);
}

namespace {

void consider(std::optional<RayHit>& best, double t, SurfaceKind kind, int index) {
  if (!best || t < best->distance) {
    best = RayHit{t, kind, index};
  }
}

}  // namespace

std::optional<RayHit> cast_ray(const Point3& origin, const Point3& dir,
                               const BackgroundScene& scene,
                               const VehicleBoxState* vehicle, double max_range) {
  std::optional<RayHit> best;

  if (dir.z < 0.0) {
    const double t = (scene.ground_z - origin.z) / dir.z;
    if (t >= 1e-9) consider(best, t, SurfaceKind::kGround, -1);
  }

  for (std::size_t i = 0; i < scene.boxes.size(); ++i) {
    if (auto t = intersect_aabb(origin, dir, scene.boxes[i])) {
      consider(best, *t, SurfaceKind::kStaticBox, static_cast<int>(i));
    }
  }

  if (vehicle) {
    // Work in the vehicle frame: rotate by -yaw about its center, shift the
    // ground to z = 0. Rotation preserves distances so t carries over.
    const double c = std::cos(vehicle->pose.yaw);
    const double s = std::sin(vehicle->pose.yaw);
    const double rx = origin.x - vehicle->pose.x;
    const double ry = origin.y - vehicle->pose.y;
    const Point3 o_local{c * rx + s * ry, -s * rx + c * ry, origin.z - vehicle->ground_z};
    const Point3 d_local{c * dir.x + s * dir.y, -s * dir.x + c * dir.y, dir.z};
    const auto boxes = vehicle->local_boxes();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (auto t = intersect_aabb(o_local, d_local, boxes[i])) {
        const auto kind = (i == 0) ? SurfaceKind::kVehicleBody : SurfaceKind::kVehicleMirror;
        consider(best, *t, kind, static_cast<int>(i));
      }
    }
  }

  if (best && best->distance > max_range) return std::nullopt;
  return best;
}

}  // namespace cooploc

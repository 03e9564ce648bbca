#pragma once

#include <optional>

#include "cooploc/geometry.hpp"
#include "cooploc/scene.hpp"

namespace cooploc {

/// What a ray ended on, for tests and occlusion bookkeeping.
enum class SurfaceKind { kGround, kStaticBox, kVehicleBody, kVehicleMirror };

struct RayHit {
  double distance{0.0};   // along the (unit) ray direction
  SurfaceKind surface{SurfaceKind::kGround};
  int object_index{-1};   // box index within its group, -1 for ground
};

/// First intersection of the ray with an axis-aligned box, if any, at
/// parameter >= t_min. Ray direction need not be normalized; the returned
/// parameter is in units of |dir|.
std::optional<double> intersect_aabb(const Point3& origin, const Point3& dir,
                                     const Aabb& box, double t_min = 1e-9);

/// Nearest hit among ground plane, static boxes, and the vehicle's boxes.
/// `dir` must be a unit vector; hits beyond max_range are discarded.
/// Rays parallel to the ground that never descend return nothing.
std::optional<RayHit> cast_ray(const Point3& origin, const Point3& dir,
                               const BackgroundScene& scene,
                               const VehicleBoxState* vehicle, double max_range);

}  // namespace cooploc

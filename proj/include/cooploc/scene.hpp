#pragma once

#include <optional>
#include <vector>

#include "cooploc/geometry.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Axis-aligned box in the map frame.
struct Aabb {
  Point3 min;
  Point3 max;

  void validate() const;
  bool contains(const Point3& p, double tol = 0.0) const;
};

/// Everything static that a roadside scan can hit: a ground plane plus
/// box-shaped clutter (buildings, barriers, cabinets).
struct BackgroundScene {
  double ground_z{0.0};
  std::vector<Aabb> boxes;
};

/// A vehicle for scan synthesis: its footprint box sits on the ground at
/// `pose`, optionally with two mirror stubs protruding sideways near the top.
struct VehicleBoxState {
  Pose2D pose;            // map frame, box center in plan view
  VehicleSpec spec;
  double ground_z{0.0};
  bool mirrors{false};

  /// Mirror stub geometry (vehicle frame), only meaningful when mirrors=true.
  /// Stubs are small boxes centered at +/- (width/2 + overhang/2) laterally.
  double mirror_overhang{0.2};
  double mirror_size{0.1};
  double mirror_center_z{1.0};  // above ground, must clear the 0.8 m cutoff

  /// Vehicle-frame axis-aligned boxes making up the body and mirrors.
  /// First entry is always the body.
  std::vector<Aabb> local_boxes() const;
};

}  // namespace cooploc

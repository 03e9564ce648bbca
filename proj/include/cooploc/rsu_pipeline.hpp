#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cooploc/background_filter.hpp"
#include "cooploc/lshape.hpp"
#include "cooploc/scan_synth.hpp"
#include "cooploc/types.hpp"

namespace cooploc {

/// Picks the low points used for rectangle fitting: everything within
/// height_cutoff of the ground (bumper-level body outline, below mirrors),
/// capped at the `cap` lowest points (ties keep earlier input), at least
/// min_points required. ground_z is in the same frame as the points.
/// Survivors keep their input order and are projected to plan view.
std::optional<std::vector<Point2>> select_lfa_points(const std::vector<Point3>& points,
                                                     double ground_z, double height_cutoff,
                                                     std::size_t cap, std::size_t min_points);

/// Everything a roadside unit needs to turn one live scan into a vehicle
/// pose estimate. ref_position (map frame) centers the search region; with
/// no reference the unit does not attempt an estimate.
struct RsuContext {
  BackgroundIndex background;
  ScanMount mount;
  VehicleSpec vehicle;
  double sigma_xy{0.0};          // reported horizontal std of the estimate
  double effective_range{0.0};   // beyond this, no estimation is attempted
  std::optional<Point2> ref_position;
  std::optional<double> heading_hint;  // map-frame yaw expectation

  double roi_radius{10.0};
  double match_threshold{0.15};
  double height_cutoff{0.8};
  std::size_t lfa_cap{500};
  std::size_t min_points{10};
  double angle_step{deg2rad(1.0)};
  double containment_margin{0.3};  // slack when checking points against the refined box
  double min_span_fraction{0.5};   // cluster must cover this much of one catalog side

  void validate() const;
};

struct RsuDiagnostics {
  std::size_t lfa_point_count{0};
  std::size_t corner_index{0};
  OrientedRect raw_rect;         // sensor frame, pre-refinement
  Point2 alignment_point;        // map frame
};

struct RsuMeasurement {
  PoseMeasurement measurement;   // x/y observed, everything else unobserved
  RsuDiagnostics diagnostics;
};

/// Full pipeline: background subtraction inside the region of interest,
/// low-point selection, rectangle fit, dimension-based refinement, transform
/// into the map frame. Returns nothing when the reference position is
/// missing or out of range, too few points survive, the fit degenerates, or
/// the cluster is too fragmentary to place the full-size box reliably.
std::optional<RsuMeasurement> estimate_vehicle_pose(const RsuContext& ctx,
                                                    const PointCloud& live_scan);

}  // namespace cooploc

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>

namespace cooploc {

/// Per-axis standard deviations for a 6-DoF pose measurement
/// (x, y, z, roll, pitch, yaw). An axis the sensor does not observe
/// carries kUnobserved instead of a huge finite value, and fusion
/// skips that dimension entirely.
struct CovarianceSpec {
  static constexpr double kUnobserved = std::numeric_limits<double>::infinity();

  enum Axis { kX = 0, kY = 1, kZ = 2, kRoll = 3, kPitch = 4, kYaw = 5 };

  std::array<double, 6> sigma{kUnobserved, kUnobserved, kUnobserved,
                              kUnobserved, kUnobserved, kUnobserved};

  bool observed(int axis) const { return std::isfinite(sigma[static_cast<size_t>(axis)]); }

  /// Throws std::invalid_argument unless every finite entry is strictly positive.
  void validate() const;
};

/// Diagonal covariance over the observed axes only, plus the mask saying
/// which of the six axes each row/column corresponds to.
struct MaskedCovariance {
  Eigen::MatrixXd matrix;        // k x k, k = number of observed axes
  std::array<bool, 6> mask{};    // mask[axis] == true iff axis observed

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Squares the observed standard deviations into a diagonal covariance block.
MaskedCovariance covariance_matrix(const CovarianceSpec& spec);

/// Covariance reported by the map-matching localizer (all six axes observed).
CovarianceSpec ndt_covariance();

/// Covariance reported by a roadside 2D localizer: horizontal plane only.
CovarianceSpec rsu_covariance(double sigma_xy);

}  // namespace cooploc

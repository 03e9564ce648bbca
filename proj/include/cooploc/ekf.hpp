#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "cooploc/types.hpp"

namespace cooploc {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Planar constant-velocity, constant-turn-rate filter state:
/// [x, y, yaw, v, omega].
struct EkfState {
  double t{0.0};
  Vec5 mean{Vec5::Zero()};
  Mat5 cov{Mat5::Identity()};
};

struct EkfTuning {
  double dt{0.02};
  double horizon_s{1.0};       // measurements older than this are rejected
  int smooth_steps{4};         // partial updates per delivered measurement
  // Process noise standard deviations per sqrt(second), one per state.
  std::array<double, 5> process_std{0.05, 0.05, 0.01, 0.5, 0.1};

  void validate() const;
};

/// Pose measurement reduced to the planar state: z, R, and the rows of the
/// observation matrix for whichever of x, y, yaw the source observed.
struct PlanarObservation {
  Eigen::VectorXd z;
  Eigen::MatrixXd R;
  Eigen::MatrixXd H;   // dim x 5
  int yaw_row{-1};     // row whose innovation wraps, -1 if yaw unobserved
};

PlanarObservation extract_planar_observation(const PoseMeasurement& m);

/// One motion step. Yaw is re-normalized and the covariance symmetrized.
EkfState ekf_predict(const EkfState& state, double dt, const std::array<double, 5>& process_std);

/// Jacobian of the motion model at the given state, for testing against
/// finite differences.
Mat5 ekf_motion_jacobian(const Vec5& mean, double dt);

/// Measurement update with the observation noise inflated by `r_scale`.
/// Joseph-form covariance update; throws if the innovation covariance is not
/// positive definite.
EkfState ekf_update(const EkfState& state, const PlanarObservation& obs, double r_scale = 1.0);

/// Applies the measurement as `steps` consecutive partial updates, each with
/// the noise scaled by `steps`. Equivalent information, smoother transient.
EkfState ekf_update_smooth(const EkfState& state, const PlanarObservation& obs, int steps);

}  // namespace cooploc

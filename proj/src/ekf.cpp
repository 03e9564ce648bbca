#include "cooploc/ekf.hpp"

#include <cmath>
#include <stdexcept>

#include "cooploc/covariance.hpp"
#include "cooploc/geometry.hpp"

namespace cooploc {

void EkfTuning::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("ekf tuning: dt must be positive");
  if (!(horizon_s >= 0.0)) throw std::invalid_argument("ekf tuning: horizon must be nonnegative");
  if (smooth_steps < 1) throw std::invalid_argument("ekf tuning: smooth_steps must be >= 1");
  for (double q : process_std) {
    if (!(q > 0.0)) throw std::invalid_argument("ekf tuning: process stds must be positive");
  }
}

PlanarObservation extract_planar_observation(const PoseMeasurement& m) {
  m.validate();
  // Planar state order (x, y, yaw) against the 6-dof axis indices.
  struct AxisMap {
    CovarianceSpec::Axis axis;
    int state_index;
    double value;
  };
  const AxisMap axes[3] = {{CovarianceSpec::kX, 0, m.pose.x},
                           {CovarianceSpec::kY, 1, m.pose.y},
                           {CovarianceSpec::kYaw, 2, m.pose.yaw}};

  int dim = 0;
  for (const auto& a : axes) {
    if (m.cov.observed(a.axis)) ++dim;
  }
  if (dim == 0) {
    throw std::invalid_argument("measurement observes none of x, y, yaw");
  }

  PlanarObservation obs;
  obs.z.resize(dim);
  obs.R = Eigen::MatrixXd::Zero(dim, dim);
  obs.H = Eigen::MatrixXd::Zero(dim, 5);
  int row = 0;
  for (const auto& a : axes) {
    if (!m.cov.observed(a.axis)) continue;
    obs.z(row) = a.value;
    const double sigma = m.cov.sigma[a.axis];
    obs.R(row, row) = sigma * sigma;
    obs.H(row, a.state_index) = 1.0;
    if (a.state_index == 2) obs.yaw_row = row;
    ++row;
  }
  return obs;
}

Mat5 ekf_motion_jacobian(const Vec5& mean, double dt) {
  const double yaw = mean(2);
  const double v = mean(3);
  Mat5 F = Mat5::Identity();
  F(0, 2) = -v * std::sin(yaw) * dt;
  F(0, 3) = std::cos(yaw) * dt;
  F(1, 2) = v * std::cos(yaw) * dt;
  F(1, 3) = std::sin(yaw) * dt;
  F(2, 4) = dt;
  return F;
}

EkfState ekf_predict(const EkfState& state, double dt,
                     const std::array<double, 5>& process_std) {
  if (!(dt > 0.0)) throw std::invalid_argument("ekf_predict: dt must be positive");
  const double yaw = state.mean(2);
  const double v = state.mean(3);
  const double omega = state.mean(4);

  EkfState next;
  next.t = state.t + dt;
  next.mean(0) = state.mean(0) + v * std::cos(yaw) * dt;
  next.mean(1) = state.mean(1) + v * std::sin(yaw) * dt;
  next.mean(2) = normalize_yaw(yaw + omega * dt);
  next.mean(3) = v;
  next.mean(4) = omega;

  const Mat5 F = ekf_motion_jacobian(state.mean, dt);
  Mat5 Q = Mat5::Zero();
  for (int i = 0; i < 5; ++i) Q(i, i) = process_std[i] * process_std[i] * dt;
  next.cov = F * state.cov * F.transpose() + Q;
  next.cov = ((next.cov + next.cov.transpose()) / 2.0).eval();
  return next;
}

EkfState ekf_update(const EkfState& state, const PlanarObservation& obs, double r_scale) {
  if (!(r_scale > 0.0)) throw std::invalid_argument("ekf_update: r_scale must be positive");
  const Eigen::MatrixXd R = obs.R * r_scale;
  const Eigen::MatrixXd S = obs.H * state.cov * obs.H.transpose() + R;
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("ekf_update: innovation covariance is not positive definite");
  }
  const Eigen::MatrixXd K = llt.solve(obs.H * state.cov).transpose();

  Eigen::VectorXd innovation = obs.z - obs.H * state.mean;
  if (obs.yaw_row >= 0) {
    innovation(obs.yaw_row) = angle_diff(obs.z(obs.yaw_row), state.mean(2));
  }

  EkfState next;
  next.t = state.t;
  next.mean = state.mean + K * innovation;
  next.mean(2) = normalize_yaw(next.mean(2));
  const Mat5 IKH = Mat5::Identity() - K * obs.H;
  next.cov = IKH * state.cov * IKH.transpose() + K * R * K.transpose();
  next.cov = ((next.cov + next.cov.transpose()) / 2.0).eval();
  return next;
}

EkfState ekf_update_smooth(const EkfState& state, const PlanarObservation& obs, int steps) {
  if (steps < 1) throw std::invalid_argument("ekf_update_smooth: steps must be >= 1");
  EkfState current = state;
  for (int i = 0; i < steps; ++i) {
    current = ekf_update(current, obs, static_cast<double>(steps));
  }
  return current;
}

}  // namespace cooploc

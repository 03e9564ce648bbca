#include "cooploc/covariance.hpp"

#include <stdexcept>
#include <string>

namespace cooploc {

void CovarianceSpec::validate() const {
  for (size_t i = 0; i < sigma.size(); ++i) {
    const double s = sigma[i];
    if (std::isnan(s)) {
      throw std::invalid_argument("CovarianceSpec: sigma[" + std::to_string(i) + "] is NaN");
    }
    if (std::isfinite(s) && s <= 0.0) {
      throw std::invalid_argument("CovarianceSpec: sigma[" + std::to_string(i) +
                                  "] must be strictly positive");
    }
  }
}

MaskedCovariance covariance_matrix(const CovarianceSpec& spec) {
  spec.validate();
  MaskedCovariance out;
  int k = 0;
  for (int axis = 0; axis < 6; ++axis) {
    out.mask[static_cast<size_t>(axis)] = spec.observed(axis);
    if (out.mask[static_cast<size_t>(axis)]) {
      ++k;
    }
  }
  out.matrix = Eigen::MatrixXd::Zero(k, k);
  int row = 0;
  for (int axis = 0; axis < 6; ++axis) {
    if (out.mask[static_cast<size_t>(axis)]) {
      const double s = spec.sigma[static_cast<size_t>(axis)];
      out.matrix(row, row) = s * s;
      ++row;
    }
  }
  return out;
}

CovarianceSpec ndt_covariance() {
  CovarianceSpec spec;
  spec.sigma = {0.0225, 0.0225, 0.0225, 0.000625, 0.000625, 0.000625};
  return spec;
}

CovarianceSpec rsu_covariance(double sigma_xy) {
  CovarianceSpec spec;
  spec.sigma[CovarianceSpec::kX] = sigma_xy;
  spec.sigma[CovarianceSpec::kY] = sigma_xy;
  return spec;
}

}  // namespace cooploc

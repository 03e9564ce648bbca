#include "cooploc/types.hpp"

#include <stdexcept>

namespace cooploc {

void VehicleSpec::validate() const {
  if (!(width > 0.0) || !(length >= width)) {
    throw std::invalid_argument("VehicleSpec: require length >= width > 0");
  }
  if (!(height > 0.0)) {
    throw std::invalid_argument("VehicleSpec: require height > 0");
  }
}

void PoseMeasurement::validate() const {
  if (!(stamp >= 0.0)) {
    throw std::invalid_argument("PoseMeasurement: stamp must be >= 0");
  }
  cov.validate();
  if (source == MeasurementSource::kRsu) {
    for (int axis : {CovarianceSpec::kZ, CovarianceSpec::kRoll, CovarianceSpec::kPitch,
                     CovarianceSpec::kYaw}) {
      if (cov.observed(axis)) {
        throw std::invalid_argument(
            "PoseMeasurement: roadside source must leave z/roll/pitch/yaw unobserved");
      }
    }
  }
}

}  // namespace cooploc

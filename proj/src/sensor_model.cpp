#include "cooploc/sensor_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cooploc {

std::string to_string(SensorModelId id) {
  switch (id) {
    case SensorModelId::kVlp16:
      return "vlp16";
    case SensorModelId::kVlp32c:
      return "vlp32c";
    case SensorModelId::kCustom:
      return "custom";
  }
  throw std::logic_error("to_string: unknown sensor model id");
}

SensorModelId sensor_model_from_string(const std::string& name) {
  if (name == "vlp16") return SensorModelId::kVlp16;
  if (name == "vlp32c") return SensorModelId::kVlp32c;
  if (name == "custom") return SensorModelId::kCustom;
  throw std::invalid_argument("unknown sensor model '" + name +
                              "' (expected vlp16, vlp32c, or custom)");
}

void SensorModel::validate() const {
  if (elevations_rad.empty()) {
    throw std::invalid_argument("sensor model: elevation table is empty");
  }
  if (!std::is_sorted(elevations_rad.begin(), elevations_rad.end())) {
    throw std::invalid_argument("sensor model: elevations must be sorted ascending");
  }
  for (double e : elevations_rad) {
    if (!std::isfinite(e) || std::abs(e) >= kPi / 2.0) {
      throw std::invalid_argument("sensor model: elevations must lie in (-pi/2, pi/2)");
    }
  }
  if (!(azimuth_step_rad > 0.0) || !(azimuth_step_rad < kPi / 8.0)) {
    throw std::invalid_argument("sensor model: azimuth step must lie in (0, pi/8)");
  }
  if (!(max_range_m > 0.0)) {
    throw std::invalid_argument("sensor model: max range must be positive");
  }
  if (!(range_noise_sigma_m >= 0.0)) {
    throw std::invalid_argument("sensor model: range noise sigma must be nonnegative");
  }
  if (!(rate_hz > 0.0)) {
    throw std::invalid_argument("sensor model: rate must be positive");
  }
}

std::filesystem::path default_config_dir() {
  if (const char* env = std::getenv("COOPLOC_CONFIG_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
#ifdef COOPLOC_DEFAULT_CONFIG_DIR
  return std::filesystem::path(COOPLOC_DEFAULT_CONFIG_DIR);
#else
  return std::filesystem::path("config");
#endif
}

std::vector<double> load_beam_table(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open beam table: " + file.string());
  }
  std::vector<double> elevations;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double deg = 0.0;
    if (!(ls >> deg)) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": expected one elevation angle in degrees");
    }
    elevations.push_back(deg2rad(deg));
  }
  std::sort(elevations.begin(), elevations.end());
  return elevations;
}

std::vector<double> beam_table(SensorModelId id, const std::filesystem::path& config_dir) {
  switch (id) {
    case SensorModelId::kVlp16:
      return load_beam_table(config_dir / "vlp16_elevations_deg.txt");
    case SensorModelId::kVlp32c:
      return load_beam_table(config_dir / "vlp32c_elevations_deg.txt");
    case SensorModelId::kCustom:
      throw std::invalid_argument(
          "custom sensor has no checked-in beam table; supply elevations explicitly");
  }
  throw std::logic_error("beam_table: unknown sensor model id");
}

double default_effective_range(SensorModelId id) {
  switch (id) {
    case SensorModelId::kVlp16:
      return 30.0;
    case SensorModelId::kVlp32c:
      return 50.0;
    case SensorModelId::kCustom:
      throw std::invalid_argument("custom sensor has no default effective range");
  }
  throw std::logic_error("default_effective_range: unknown sensor model id");
}

SensorModel make_sensor_model(SensorModelId id, const std::filesystem::path& config_dir) {
  SensorModel m;
  m.id = id;
  m.elevations_rad = beam_table(id, config_dir);
  m.azimuth_step_rad = kDefaultAzimuthStepRad;
  m.max_range_m = (id == SensorModelId::kVlp32c) ? 120.0 : 100.0;
  m.range_noise_sigma_m = kDefaultRangeNoiseSigma;
  m.rate_hz = 10.0;
  m.validate();
  return m;
}

double rsu_reported_sigma_xy(SensorModelId id) {
  switch (id) {
    case SensorModelId::kVlp16:
      return 0.01486;
    case SensorModelId::kVlp32c:
      return 0.00681;
    case SensorModelId::kCustom:
      throw std::invalid_argument("custom sensor has no calibrated pose sigma");
  }
  throw std::logic_error("rsu_reported_sigma_xy: unknown sensor model id");
}

}  // namespace cooploc

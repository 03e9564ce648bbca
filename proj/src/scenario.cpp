#include "cooploc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cooploc/channel.hpp"

namespace cooploc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw ConfigError(path + ": " + reason);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(path + "." + item.key(), "unknown key");
  }
}

const json* find_key(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

double get_number(const json& j, const std::string& path, const char* key) {
  const json* v = find_key(j, key);
  if (!v) fail(path + "." + key, "missing required key");
  return as_number(*v, path + "." + key);
}

double get_number_or(const json& j, const std::string& path, const char* key, double fallback) {
  const json* v = find_key(j, key);
  return v ? as_number(*v, path + "." + key) : fallback;
}

std::optional<double> opt_number(const json& j, const std::string& path, const char* key) {
  const json* v = find_key(j, key);
  if (!v) return std::nullopt;
  return as_number(*v, path + "." + key);
}

bool get_bool_or(const json& j, const std::string& path, const char* key, bool fallback) {
  const json* v = find_key(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
  return v->get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key) {
  const json* v = find_key(j, key);
  if (!v) fail(path + "." + key, "missing required key");
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->get<std::string>();
}

std::uint64_t get_seed_or(const json& j, const std::string& path, const char* key,
                          std::uint64_t fallback) {
  const json* v = find_key(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer() && !v->is_number_unsigned()) {
    fail(path + "." + key, "expected a nonnegative integer");
  }
  if (v->is_number_integer() && v->get<std::int64_t>() < 0) {
    fail(path + "." + key, "expected a nonnegative integer");
  }
  return v->get<std::uint64_t>();
}

int get_int_or(const json& j, const std::string& path, const char* key, int fallback) {
  const json* v = find_key(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer() && !v->is_number_unsigned()) {
    fail(path + "." + key, "expected an integer");
  }
  return v->get<int>();
}

Point2 get_point2(const json& j, const std::string& path, const char* key) {
  const json* v = find_key(j, key);
  if (!v) fail(path + "." + key, "missing required key");
  if (!v->is_array() || v->size() != 2) fail(path + "." + key, "expected [x, y]");
  return {as_number((*v)[0], path + "." + key + "[0]"),
          as_number((*v)[1], path + "." + key + "[1]")};
}

Point3 get_point3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected [x, y, z]");
  return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]"),
          as_number(v[2], path + "[2]")};
}

RoadConfig parse_road(const json& j) {
  require_object(j, "road");
  check_keys(j, "road", {"start", "end", "speed_mps"});
  RoadConfig road;
  road.start = get_point2(j, "road", "start");
  road.end = get_point2(j, "road", "end");
  road.speed_mps = get_number(j, "road", "speed_mps");
  return road;
}

VehicleConfig parse_vehicle(const json& j) {
  require_object(j, "vehicle");
  check_keys(j, "vehicle", {"id", "length", "width", "height", "start_arc", "mirrors"});
  VehicleConfig v;
  v.spec.id = get_string(j, "vehicle", "id");
  v.spec.length = get_number(j, "vehicle", "length");
  v.spec.width = get_number(j, "vehicle", "width");
  v.spec.height = get_number(j, "vehicle", "height");
  v.start_arc = get_number_or(j, "vehicle", "start_arc", 0.0);
  v.mirrors = get_bool_or(j, "vehicle", "mirrors", false);
  return v;
}

RsuConfig parse_rsu(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path,
             {"x", "y", "yaw_deg", "mount_height", "sensor", "elevations_deg",
              "effective_range", "reported_sigma_xy", "range_noise_sigma",
              "azimuth_step_deg", "max_range"});
  RsuConfig r;
  r.pose.x = get_number(j, path, "x");
  r.pose.y = get_number(j, path, "y");
  r.pose.yaw = deg2rad(get_number(j, path, "yaw_deg"));
  r.mount_height = get_number_or(j, path, "mount_height", 2.0);
  try {
    r.sensor_id = sensor_model_from_string(get_string(j, path, "sensor"));
  } catch (const std::invalid_argument& e) {
    fail(path + ".sensor", e.what());
  }
  if (const json* elev = find_key(j, "elevations_deg")) {
    if (r.sensor_id != SensorModelId::kCustom) {
      fail(path + ".elevations_deg", "only valid when sensor is \"custom\"");
    }
    if (!elev->is_array() || elev->empty()) {
      fail(path + ".elevations_deg", "expected a nonempty array of degrees");
    }
    for (std::size_t i = 0; i < elev->size(); ++i) {
      r.custom_elevations_rad.push_back(
          deg2rad(as_number((*elev)[i], path + ".elevations_deg[" + std::to_string(i) + "]")));
    }
    std::sort(r.custom_elevations_rad.begin(), r.custom_elevations_rad.end());
  }
  r.effective_range = opt_number(j, path, "effective_range");
  r.reported_sigma_xy = opt_number(j, path, "reported_sigma_xy");
  r.range_noise_sigma = opt_number(j, path, "range_noise_sigma");
  r.azimuth_step_deg = opt_number(j, path, "azimuth_step_deg");
  r.max_range = opt_number(j, path, "max_range");
  return r;
}

VulnerableZone parse_zone(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"arc_begin", "arc_end", "multiplier", "blend_m"});
  VulnerableZone z;
  z.arc_begin = get_number(j, path, "arc_begin");
  z.arc_end = get_number(j, path, "arc_end");
  z.multiplier = get_number(j, path, "multiplier");
  z.blend_m = get_number_or(j, path, "blend_m", 5.0);
  return z;
}

NdtProfile parse_ndt(const json& j) {
  require_object(j, "ndt");
  check_keys(j, "ndt", {"sigma_xy", "sigma_yaw", "rate_hz", "zone"});
  NdtProfile n;
  n.sigma_xy = get_number(j, "ndt", "sigma_xy");
  n.sigma_yaw = get_number(j, "ndt", "sigma_yaw");
  n.rate_hz = get_number_or(j, "ndt", "rate_hz", 10.0);
  if (const json* z = find_key(j, "zone")) {
    n.zone = parse_zone(*z, "ndt.zone");
  }
  return n;
}

BackgroundScene parse_scene(const json& j) {
  require_object(j, "scene");
  check_keys(j, "scene", {"ground_z", "boxes"});
  BackgroundScene s;
  s.ground_z = get_number_or(j, "scene", "ground_z", 0.0);
  if (const json* boxes = find_key(j, "boxes")) {
    if (!boxes->is_array()) fail("scene.boxes", "expected an array");
    for (std::size_t i = 0; i < boxes->size(); ++i) {
      const std::string path = "scene.boxes[" + std::to_string(i) + "]";
      const json& b = (*boxes)[i];
      require_object(b, path);
      check_keys(b, path, {"min", "max"});
      const json* mn = find_key(b, "min");
      const json* mx = find_key(b, "max");
      if (!mn || !mx) fail(path, "expected min and max corners");
      Aabb box{get_point3(*mn, path + ".min"), get_point3(*mx, path + ".max")};
      try {
        box.validate();
      } catch (const std::invalid_argument& e) {
        fail(path, e.what());
      }
      s.boxes.push_back(box);
    }
  }
  return s;
}

ChannelSettings parse_channel(const json& j) {
  require_object(j, "channel");
  check_keys(j, "channel", {"delay_ms", "loss_prob"});
  ChannelSettings c;
  c.delay_ms = get_number_or(j, "channel", "delay_ms", 0.0);
  c.loss_prob = get_number_or(j, "channel", "loss_prob", 0.0);
  return c;
}

EkfTuning parse_ekf(const json& j) {
  require_object(j, "ekf");
  check_keys(j, "ekf", {"dt", "horizon_s", "smooth_steps", "process_std"});
  EkfTuning e;
  e.dt = get_number_or(j, "ekf", "dt", e.dt);
  e.horizon_s = get_number_or(j, "ekf", "horizon_s", e.horizon_s);
  e.smooth_steps = get_int_or(j, "ekf", "smooth_steps", e.smooth_steps);
  if (const json* q = find_key(j, "process_std")) {
    if (!q->is_array() || q->size() != 5) {
      fail("ekf.process_std", "expected 5 entries: x, y, yaw, v, omega");
    }
    for (std::size_t i = 0; i < 5; ++i) {
      e.process_std[i] = as_number((*q)[i], "ekf.process_std[" + std::to_string(i) + "]");
    }
  }
  return e;
}

SimSettings parse_sim(const json& j) {
  require_object(j, "sim");
  check_keys(j, "sim", {"duration_s", "master_seed", "trials"});
  SimSettings s;
  s.duration_s = get_number(j, "sim", "duration_s");
  s.master_seed = get_seed_or(j, "sim", "master_seed", 1);
  s.trials = get_int_or(j, "sim", "trials", 10);
  return s;
}

}  // namespace

double RoadConfig::length() const {
  return std::hypot(end.x - start.x, end.y - start.y);
}

Pose2D RoadConfig::pose_at_arc(double arc) const {
  const double len = length();
  const double ux = (end.x - start.x) / len;
  const double uy = (end.y - start.y) / len;
  return {start.x + arc * ux, start.y + arc * uy, std::atan2(uy, ux)};
}

SensorModel RsuConfig::build_model() const {
  SensorModel m;
  if (sensor_id == SensorModelId::kCustom) {
    if (custom_elevations_rad.empty()) {
      throw ConfigError("custom sensor requires elevations_deg");
    }
    m.id = SensorModelId::kCustom;
    m.elevations_rad = custom_elevations_rad;
    m.max_range_m = max_range.value_or(100.0);
    m.range_noise_sigma_m = range_noise_sigma.value_or(kDefaultRangeNoiseSigma);
  } else {
    m = make_sensor_model(sensor_id);
    if (max_range) m.max_range_m = *max_range;
    if (range_noise_sigma) m.range_noise_sigma_m = *range_noise_sigma;
  }
  if (azimuth_step_deg) m.azimuth_step_rad = deg2rad(*azimuth_step_deg);
  m.validate();
  return m;
}

double RsuConfig::resolved_effective_range() const {
  if (effective_range) return *effective_range;
  if (sensor_id == SensorModelId::kCustom) {
    throw ConfigError("custom sensor requires effective_range");
  }
  return default_effective_range(sensor_id);
}

double RsuConfig::resolved_reported_sigma() const {
  if (reported_sigma_xy) return *reported_sigma_xy;
  if (sensor_id == SensorModelId::kCustom) {
    throw ConfigError("custom sensor requires reported_sigma_xy");
  }
  return rsu_reported_sigma_xy(sensor_id);
}

double VulnerableZone::noise_scale(double arc) const {
  if (arc >= arc_begin && arc <= arc_end) return multiplier;
  const double d = arc < arc_begin ? arc_begin - arc : arc - arc_end;
  if (blend_m <= 0.0 || d >= blend_m) return 1.0;
  return 1.0 + (multiplier - 1.0) * (1.0 - d / blend_m);
}

void ScenarioConfig::validate() const {
  if (!(road.length() > 0.0) || !std::isfinite(road.length())) {
    throw ConfigError("road: start and end must be distinct");
  }
  if (!(road.speed_mps > 0.0)) throw ConfigError("road.speed_mps: must be positive");
  try {
    vehicle.spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("vehicle: ") + e.what());
  }
  if (!std::isfinite(vehicle.start_arc)) throw ConfigError("vehicle.start_arc: must be finite");
  for (std::size_t i = 0; i < rsus.size(); ++i) {
    const std::string path = "rsus[" + std::to_string(i) + "]";
    const RsuConfig& r = rsus[i];
    if (!(r.mount_height > 0.0)) throw ConfigError(path + ".mount_height: must be positive");
    try {
      r.build_model();
      if (!(r.resolved_effective_range() > 0.0)) {
        throw ConfigError(path + ".effective_range: must be positive");
      }
      if (!(r.resolved_reported_sigma() > 0.0)) {
        throw ConfigError(path + ".reported_sigma_xy: must be positive");
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  if (!(ndt.sigma_xy >= 0.0)) throw ConfigError("ndt.sigma_xy: must be nonnegative");
  if (!(ndt.sigma_yaw >= 0.0)) throw ConfigError("ndt.sigma_yaw: must be nonnegative");
  if (!(ndt.rate_hz > 0.0)) throw ConfigError("ndt.rate_hz: must be positive");
  if (!(ndt.zone.arc_begin <= ndt.zone.arc_end)) {
    throw ConfigError("ndt.zone: arc_begin must not exceed arc_end");
  }
  if (!(ndt.zone.multiplier > 0.0)) throw ConfigError("ndt.zone.multiplier: must be positive");
  if (!(ndt.zone.blend_m >= 0.0)) throw ConfigError("ndt.zone.blend_m: must be nonnegative");
  try {
    ChannelConfig{channel.delay_ms / 1000.0, channel.loss_prob, 0}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
  try {
    ekf.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ekf: ") + e.what());
  }
  if (!(sim.duration_s > 0.0)) throw ConfigError("sim.duration_s: must be positive");
  if (sim.trials < 1) throw ConfigError("sim.trials: must be at least 1");
}

void ScenarioConfig::override_sensor(SensorModelId id) {
  if (id == SensorModelId::kCustom) {
    throw std::invalid_argument("sensor override must name a catalog model");
  }
  for (RsuConfig& r : rsus) {
    r.sensor_id = id;
    r.custom_elevations_rad.clear();
    r.effective_range.reset();
    r.reported_sigma_xy.reset();
  }
}

ScenarioConfig parse_scenario(const std::string& json_text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  require_object(j, source_name);
  check_keys(j, source_name,
             {"road", "vehicle", "rsus", "ndt", "scene", "channel", "ekf", "sim"});

  ScenarioConfig cfg;
  const json* road = find_key(j, "road");
  if (!road) fail("road", "missing required section");
  cfg.road = parse_road(*road);

  const json* vehicle = find_key(j, "vehicle");
  if (!vehicle) fail("vehicle", "missing required section");
  cfg.vehicle = parse_vehicle(*vehicle);

  if (const json* rsus = find_key(j, "rsus")) {
    if (!rsus->is_array()) fail("rsus", "expected an array");
    for (std::size_t i = 0; i < rsus->size(); ++i) {
      cfg.rsus.push_back(parse_rsu((*rsus)[i], "rsus[" + std::to_string(i) + "]"));
    }
  }

  const json* ndt = find_key(j, "ndt");
  if (!ndt) fail("ndt", "missing required section");
  cfg.ndt = parse_ndt(*ndt);

  if (const json* scene = find_key(j, "scene")) cfg.scene = parse_scene(*scene);
  if (const json* channel = find_key(j, "channel")) cfg.channel = parse_channel(*channel);
  if (const json* ekf = find_key(j, "ekf")) cfg.ekf = parse_ekf(*ekf);

  const json* sim = find_key(j, "sim");
  if (!sim) fail("sim", "missing required section");
  cfg.sim = parse_sim(*sim);

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open scenario file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), file.string());
}

}  // namespace cooploc

#include "ubiloc/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

using nlohmann::json;

NoiseModel noise_from_json(const json& j) {
  const NoiseModel def{};
  NoiseModel n;
  n.range_sigma_los_m = j.value("range_sigma_los_m", def.range_sigma_los_m);
  n.range_sigma_nlos_m = j.value("range_sigma_nlos_m", def.range_sigma_nlos_m);
  n.range_bias_nlos_m = j.value("range_bias_nlos_m", def.range_bias_nlos_m);
  n.range_sigma_per_m = j.value("range_sigma_per_m", def.range_sigma_per_m);
  n.detection_radius_m = j.value("detection_radius_m", def.detection_radius_m);
  n.bearing_sigma_rad =
      j.contains("bearing_sigma_deg") ? deg_to_rad(j.at("bearing_sigma_deg").get<double>())
                                      : def.bearing_sigma_rad;
  n.gyro_drift_rad_per_s = j.contains("gyro_drift_deg_per_s")
                               ? deg_to_rad(j.at("gyro_drift_deg_per_s").get<double>())
                               : def.gyro_drift_rad_per_s;
  n.mag_sigma_rad = j.contains("mag_sigma_deg")
                        ? deg_to_rad(j.at("mag_sigma_deg").get<double>())
                        : def.mag_sigma_rad;
  for (const json& d : j.value("mag_disturbance", json::array())) {
    n.mag_disturbance.push_back({d.at("start_s").get<double>(), d.at("end_s").get<double>(),
                                 deg_to_rad(d.at("offset_deg").get<double>())});
  }
  return n;
}

json noise_to_json(const NoiseModel& n) {
  json j;
  j["range_sigma_los_m"] = n.range_sigma_los_m;
  j["range_sigma_nlos_m"] = n.range_sigma_nlos_m;
  j["range_bias_nlos_m"] = n.range_bias_nlos_m;
  j["range_sigma_per_m"] = n.range_sigma_per_m;
  j["bearing_sigma_deg"] = rad_to_deg(n.bearing_sigma_rad);
  j["detection_radius_m"] = n.detection_radius_m;
  j["gyro_drift_deg_per_s"] = rad_to_deg(n.gyro_drift_rad_per_s);
  j["mag_sigma_deg"] = rad_to_deg(n.mag_sigma_rad);
  j["mag_disturbance"] = json::array();
  for (const MagDisturbance& d : n.mag_disturbance) {
    j["mag_disturbance"].push_back(
        {{"start_s", d.start_s}, {"end_s", d.end_s}, {"offset_deg", rad_to_deg(d.offset_rad)}});
  }
  return j;
}

DetectorConfig detector_from_json(const json& j) {
  const DetectorConfig def{};
  DetectorConfig d;
  d.gps_low_threshold = j.value("gps_low_threshold", def.gps_low_threshold);
  d.gps_high_threshold = j.value("gps_high_threshold", def.gps_high_threshold);
  d.light_indoor_threshold_lux =
      j.value("light_indoor_threshold_lux", def.light_indoor_threshold_lux);
  d.dwell_s = j.value("dwell_s", def.dwell_s);
  d.ema_alpha = j.value("ema_alpha", def.ema_alpha);
  d.gate_on_accel = j.value("gate_on_accel", def.gate_on_accel);
  d.accel_moving_threshold = j.value("accel_moving_threshold", def.accel_moving_threshold);
  return d;
}

json detector_to_json(const DetectorConfig& d) {
  json j;
  j["gps_low_threshold"] = d.gps_low_threshold;
  j["gps_high_threshold"] = d.gps_high_threshold;
  j["light_indoor_threshold_lux"] = d.light_indoor_threshold_lux;
  j["dwell_s"] = d.dwell_s;
  j["ema_alpha"] = d.ema_alpha;
  j["gate_on_accel"] = d.gate_on_accel;
  j["accel_moving_threshold"] = d.accel_moving_threshold;
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.seed = j.value("seed", std::uint64_t{1});
  s.speed_mps = j.value("speed_mps", 1.0);
  s.sample_hz = j.value("sample_hz", 10.0);

  for (const json& w : j.value("walls", json::array())) {
    s.walls.push_back({{w.at(0).at(0).get<double>(), w.at(0).at(1).get<double>()},
                       {w.at(1).at(0).get<double>(), w.at(1).at(1).get<double>()}});
  }
  for (const json& a : j.at("anchors")) {
    s.anchors.push_back(
        {a.at("id").get<int>(), {a.at("x").get<double>(), a.at("y").get<double>()}});
  }
  for (const json& wp : j.at("waypoints")) {
    s.waypoints.push_back(
        {{wp.at("x").get<double>(), wp.at("y").get<double>()}, wp.value("dwell_s", 0.0)});
  }
  if (j.contains("noise")) s.noise = noise_from_json(j.at("noise"));
  if (j.contains("detector")) s.detector = detector_from_json(j.at("detector"));
  if (j.contains("indoor")) {
    const json& in = j.at("indoor");
    s.indoor.begin_s = in.at("enter_s").get<double>();
    s.indoor.end_s = in.value("exit_s", std::numeric_limits<double>::infinity());
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["speed_mps"] = s.speed_mps;
  j["sample_hz"] = s.sample_hz;
  j["walls"] = json::array();
  for (const WallSegment& w : s.walls) {
    j["walls"].push_back({{w.a.x, w.a.y}, {w.b.x, w.b.y}});
  }
  j["anchors"] = json::array();
  for (const AnchorTag& a : s.anchors) {
    j["anchors"].push_back({{"id", a.id}, {"x", a.position.x}, {"y", a.position.y}});
  }
  j["waypoints"] = json::array();
  for (const Waypoint& wp : s.waypoints) {
    j["waypoints"].push_back({{"x", wp.position.x}, {"y", wp.position.y}, {"dwell_s", wp.dwell_s}});
  }
  j["noise"] = noise_to_json(s.noise);
  j["detector"] = detector_to_json(s.detector);
  j["indoor"]["enter_s"] = s.indoor.begin_s;
  if (std::isfinite(s.indoor.end_s)) j["indoor"]["exit_s"] = s.indoor.end_s;
  return j;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario: invalid JSON: ") + e.what());
  }
  Scenario s;
  try {
    s = scenario_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario: missing or mistyped field: ") + e.what());
  }
  validate_scenario(s);
  return s;
}

std::string scenario_to_json_text(const Scenario& s) {
  return scenario_to_json(s).dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scenario: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("scenario: cannot write " + path.string());
  out << scenario_to_json_text(s);
  if (!out) throw ValidationError("scenario: write failed for " + path.string());
}

}  // namespace ubiloc

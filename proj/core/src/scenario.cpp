#include "ubiloc/scenario.hpp"

#include <cmath>
#include <set>

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(Vec2 v) { return finite(v.x) && finite(v.y); }

}  // namespace

void validate_scenario(const Scenario& s) {
  if (s.anchors.empty()) throw ValidationError("scenario: at least one anchor required");
  if (s.waypoints.size() < 2) throw ValidationError("scenario: at least two waypoints required");
  if (!(s.speed_mps > 0.0) || !finite(s.speed_mps)) {
    throw ValidationError("scenario: speed_mps must be > 0");
  }
  if (!(s.sample_hz > 0.0) || !finite(s.sample_hz)) {
    throw ValidationError("scenario: sample_hz must be > 0");
  }

  std::set<int> ids;
  for (const AnchorTag& a : s.anchors) {
    if (!finite(a.position)) throw ValidationError("scenario: anchor position must be finite");
    if (!ids.insert(a.id).second) {
      throw ValidationError("scenario: duplicate anchor id " + std::to_string(a.id));
    }
  }

  for (const WallSegment& w : s.walls) {
    if (!finite(w.a) || !finite(w.b)) throw ValidationError("scenario: wall endpoints must be finite");
    if (euclidean_distance(w.a, w.b) == 0.0) {
      throw ValidationError("scenario: wall segments must have nonzero length");
    }
  }

  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    const Waypoint& wp = s.waypoints[i];
    if (!finite(wp.position) || !finite(wp.dwell_s) || wp.dwell_s < 0.0) {
      throw ValidationError("scenario: waypoints must be finite with dwell_s >= 0");
    }
    if (i + 1 < s.waypoints.size() &&
        euclidean_distance(wp.position, s.waypoints[i + 1].position) == 0.0 &&
        wp.dwell_s <= 0.0) {
      throw ValidationError("scenario: coincident consecutive waypoints with zero dwell");
    }
  }

  const NoiseModel& n = s.noise;
  const double sigmas[] = {n.range_sigma_los_m, n.range_sigma_nlos_m, n.range_bias_nlos_m,
                           n.range_sigma_per_m, n.bearing_sigma_rad, n.mag_sigma_rad};
  for (double v : sigmas) {
    if (!finite(v) || v < 0.0) throw ValidationError("scenario: noise terms must be finite and >= 0");
  }
  if (!finite(n.gyro_drift_rad_per_s)) {
    throw ValidationError("scenario: gyro drift must be finite");
  }
  if (!(n.detection_radius_m > 0.0) || !finite(n.detection_radius_m)) {
    throw ValidationError("scenario: detection_radius_m must be > 0");
  }
  if (n.range_sigma_nlos_m < n.range_sigma_los_m) {
    throw ValidationError("scenario: NLOS range sigma must be >= LOS range sigma");
  }
  for (const MagDisturbance& d : n.mag_disturbance) {
    if (!finite(d.start_s) || !finite(d.end_s) || !finite(d.offset_rad) || d.end_s < d.start_s) {
      throw ValidationError("scenario: malformed magnetometer disturbance interval");
    }
  }

  const DetectorConfig& dc = s.detector;
  if (!(dc.gps_high_threshold > dc.gps_low_threshold)) {
    throw ValidationError("scenario: detector gps_high_threshold must exceed gps_low_threshold");
  }
  if (dc.dwell_s < 0.0 || !(dc.ema_alpha > 0.0) || dc.ema_alpha > 1.0) {
    throw ValidationError("scenario: detector dwell/alpha out of range");
  }

  if (s.indoor.begin_s < 0.0 || s.indoor.end_s < s.indoor.begin_s) {
    throw ValidationError("scenario: indoor interval must satisfy 0 <= enter <= exit");
  }
}

bool anchors_collinear(std::span<const AnchorTag> anchors) {
  if (anchors.size() < 3) return true;
  // Find a well-separated base pair, then test every other anchor against it.
  std::size_t base = 0;
  double best = 0.0;
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const double d = euclidean_distance(anchors[0].position, anchors[i].position);
    if (d > best) {
      best = d;
      base = i;
    }
  }
  if (best == 0.0) return true;
  const Vec2 a = anchors[0].position;
  const Vec2 dir = anchors[base].position - a;
  for (const AnchorTag& t : anchors) {
    const double perp = std::abs(cross(dir, t.position - a)) / best;
    if (perp > 1e-9 * std::max(1.0, best)) return false;
  }
  return true;
}

std::vector<std::string> scenario_warnings(const Scenario& s) {
  std::vector<std::string> warnings;
  if (s.anchors.size() < 3) {
    warnings.push_back("fewer than 3 anchors: multilateration unavailable, one-shot fallback only");
  } else if (anchors_collinear(s.anchors)) {
    warnings.push_back("all anchors collinear: multilateration geometry is degenerate");
  }
  return warnings;
}

double trajectory_duration_s(const Scenario& s) {
  double t = 0.0;
  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    t += std::max(0.0, s.waypoints[i].dwell_s);
    if (i + 1 < s.waypoints.size()) {
      t += euclidean_distance(s.waypoints[i].position, s.waypoints[i + 1].position) / s.speed_mps;
    }
  }
  return t;
}

Scenario campus_scenario() {
  Scenario s;
  s.name = "campus";
  s.seed = 101;
  s.speed_mps = 1.0;
  s.sample_hz = 10.0;

  // 30x16 m floor: perimeter corridor around an inner room block, entrance
  // door on the west wall. All anchors live inside the rooms, so from the
  // corridor every one of them is behind at least one wall yet still inside
  // the detection radius from anywhere on the loop.
  s.walls = {
      {{0, 0}, {30, 0}},      {{30, 0}, {30, 16}},    {{30, 16}, {0, 16}},
      {{0, 16}, {0, 9}},      {{0, 7}, {0, 0}},
      {{5, 4.5}, {25, 4.5}},  {{25, 4.5}, {25, 11.5}}, {{25, 11.5}, {5, 11.5}},
      {{5, 11.5}, {5, 4.5}},
      {{10, 4.5}, {10, 11.5}}, {{15, 4.5}, {15, 11.5}}, {{20, 4.5}, {20, 11.5}},
  };

  // Ids ordered so ascending-id prefixes stay spatially spread (density
  // sweeps subset by id prefix): 1-6 span the block corners and mid-rooms,
  // 7-12 densify the same rooms.
  s.anchors = {
      {1, {6.5, 5.5}},   {2, {23.5, 10.5}}, {3, {13.5, 5.2}},  {4, {16.5, 10.8}},
      {5, {6.5, 10.5}},  {6, {23.5, 5.5}},  {7, {11.5, 6.8}},  {8, {18.5, 9.2}},
      {9, {9.0, 9.0}},   {10, {21.0, 7.0}}, {11, {13.0, 9.4}}, {12, {17.0, 6.2}},
  };

  s.waypoints = {
      {{-13.0, 8.0}, 0.0}, {{-2.0, 8.0}, 0.0},  {{2.5, 8.0}, 0.0},
      {{2.5, 2.2}, 0.0},   {{27.5, 2.2}, 2.0},  {{27.5, 13.8}, 0.0},
      {{2.5, 13.8}, 2.0},  {{2.5, 8.0}, 0.0},   {{2.5, 2.2}, 0.0},
      {{15.0, 2.2}, 0.0},
  };

  s.noise = NoiseModel{};
  s.noise.bearing_sigma_rad = deg_to_rad(5.0);
  s.noise.mag_sigma_rad = deg_to_rad(3.0);
  s.noise.gyro_drift_rad_per_s = 0.005;
  s.noise.mag_disturbance = {
      {25.0, 45.0, deg_to_rad(20.0)},
      {60.0, 80.0, deg_to_rad(-17.0)},
  };

  // The doorway at x = 0 is crossed 13 m into the path.
  s.indoor = TimeSpan{13.0, std::numeric_limits<double>::infinity()};
  return s;
}

Scenario apartment_scenario() {
  Scenario s;
  s.name = "apartment";
  s.seed = 202;
  s.speed_mps = 0.8;
  s.sample_hz = 10.0;

  // 16x10 m railroad flat, three rooms in a row with door gaps in the
  // partitions. Bookcase walls run along the top and bottom of each room and
  // the anchors sit on them, so nearly every sight line from the walking area
  // is blocked.
  s.walls = {
      {{0, 0}, {16, 0}},         {{16, 0}, {16, 10}},     {{16, 10}, {0, 10}},
      {{0, 10}, {0, 5.5}},       {{0, 4.5}, {0, 0}},
      {{5.5, 0}, {5.5, 4.2}},    {{5.5, 5.2}, {5.5, 10}},
      {{10.5, 0}, {10.5, 4.8}},  {{10.5, 5.8}, {10.5, 10}},
      {{0.0, 8.7}, {4.3, 8.7}},  {{6.2, 8.7}, {10.5, 8.7}}, {{10.5, 8.7}, {14.8, 8.7}},
      {{0.0, 1.3}, {4.3, 1.3}},  {{5.5, 1.3}, {9.8, 1.3}},  {{12.2, 1.3}, {16.0, 1.3}},
  };

  // Anchors sit on the bookcases behind the shelf walls, two per room plus
  // one on each end wall.
  s.anchors = {
      {1, {1.6, 9.6}},  {2, {14.2, 0.4}}, {3, {12.6, 9.6}}, {4, {2.8, 0.4}},
      {5, {8.4, 9.6}},  {6, {7.2, 0.4}},  {7, {15.6, 6.8}}, {8, {0.4, 3.4}},
  };

  s.waypoints = {
      {{-8.0, 5.0}, 0.0},  {{-0.5, 5.0}, 0.0}, {{1.5, 5.0}, 0.0},
      {{3.0, 8.0}, 0.0},   {{2.5, 1.8}, 1.0},  {{4.5, 4.7}, 0.0},
      {{6.2, 4.6}, 0.0},   {{7.0, 2.2}, 0.0},  {{9.6, 3.4}, 0.0},
      {{8.2, 8.2}, 1.0},   {{9.8, 5.4}, 0.0},  {{12.0, 5.3}, 0.0},
      {{14.5, 8.2}, 0.0},  {{15.0, 1.8}, 1.0}, {{11.8, 2.2}, 0.0},
      {{13.0, 6.0}, 0.0},
  };

  s.noise = NoiseModel{};
  s.noise.bearing_sigma_rad = deg_to_rad(5.0);
  s.noise.mag_sigma_rad = deg_to_rad(3.0);
  s.noise.gyro_drift_rad_per_s = 0.005;
  // Furnished-flat calibration: multipath off the shelving inflates NLOS
  // ranging beyond the open-floor defaults.
  s.noise.range_sigma_nlos_m = 0.22;
  s.noise.range_bias_nlos_m = 0.16;
  s.noise.mag_disturbance = {
      {20.0, 32.0, deg_to_rad(17.0)},
      {40.0, 48.0, deg_to_rad(-14.0)},
  };

  // Doorway at x = 0, 8 m into the path at 0.8 m/s.
  s.indoor = TimeSpan{10.0, std::numeric_limits<double>::infinity()};
  return s;
}

}  // namespace ubiloc

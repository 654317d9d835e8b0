#include "ubiloc/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "ubiloc/error.hpp"
#include "ubiloc/rng.hpp"

namespace ubiloc {

namespace {

struct Segment {
  double t0 = 0.0;
  double t1 = 0.0;
  Vec2 p0;
  Vec2 p1;
  double heading = 0.0;
  bool dwell = false;
};

std::vector<Segment> build_segments(const Scenario& s) {
  // Heading during an initial dwell is the direction of the first motion.
  double heading = 0.0;
  for (std::size_t i = 0; i + 1 < s.waypoints.size(); ++i) {
    const Vec2 d = s.waypoints[i + 1].position - s.waypoints[i].position;
    if (norm(d) > 0.0) {
      heading = std::atan2(d.y, d.x);
      break;
    }
  }

  std::vector<Segment> segs;
  double t = 0.0;
  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    const Waypoint& wp = s.waypoints[i];
    if (wp.dwell_s > 0.0) {
      segs.push_back({t, t + wp.dwell_s, wp.position, wp.position, heading, true});
      t += wp.dwell_s;
    }
    if (i + 1 < s.waypoints.size()) {
      const Vec2 d = s.waypoints[i + 1].position - wp.position;
      const double len = norm(d);
      if (len == 0.0) {
        if (wp.dwell_s <= 0.0) {
          throw ValidationError("trajectory: coincident consecutive waypoints with zero dwell");
        }
        continue;  // pure pause, no motion segment
      }
      heading = std::atan2(d.y, d.x);
      segs.push_back({t, t + len / s.speed_mps, wp.position, s.waypoints[i + 1].position,
                      heading, false});
      t += len / s.speed_mps;
    }
  }
  return segs;
}

}  // namespace

std::vector<Pose> generate_trajectory(const Scenario& s) {
  validate_scenario(s);
  const auto segs = build_segments(s);
  const double total = segs.empty() ? 0.0 : segs.back().t1;

  const std::size_t n_steps =
      static_cast<std::size_t>(std::floor(total * s.sample_hz + 1e-9));
  std::vector<Pose> poses;
  poses.reserve(n_steps + 1);

  std::size_t si = 0;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = std::min(static_cast<double>(k) / s.sample_hz, total);
    while (si + 1 < segs.size() && t >= segs[si].t1) ++si;
    const Segment& seg = segs[si];
    Pose pose;
    pose.timestamp = t;
    pose.heading = normalize_angle(seg.heading);
    if (seg.dwell || seg.t1 <= seg.t0) {
      pose.position = seg.p0;
    } else {
      const double f = std::clamp((t - seg.t0) / (seg.t1 - seg.t0), 0.0, 1.0);
      pose.position = seg.p0 + f * (seg.p1 - seg.p0);
    }
    poses.push_back(pose);
  }
  return poses;
}

namespace {

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 c) {
  // c is known collinear with (a, b); check the bounding box.
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation_sign(p1, p2, q1);
  const int o2 = orientation_sign(p1, p2, q2);
  const int o3 = orientation_sign(q1, q2, p1);
  const int o4 = orientation_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_los(Vec2 a, Vec2 b, std::span<const WallSegment> walls) {
  for (const WallSegment& w : walls) {
    if (segments_intersect(a, b, w.a, w.b)) return false;
  }
  return true;
}

double synthetic_rss(double distance_m, bool los) {
  const double nlos_penalty = los ? 0.0 : 10.0;
  return -(20.0 * std::log10(std::max(distance_m, 0.1)) + nlos_penalty);
}

MeasurementBatch synthesize_measurements(const Pose& truth, const Scenario& s,
                                         std::uint64_t pose_index) {
  MeasurementBatch out;
  const NoiseModel& n = s.noise;
  for (const AnchorTag& anchor : s.anchors) {
    const double dist = euclidean_distance(truth.position, anchor.position);
    if (dist > n.detection_radius_m) continue;
    const bool los = is_los(truth.position, anchor.position, s.walls);

    CounterRng rng(s.seed, kRngMeasurement, pose_index, static_cast<std::uint64_t>(anchor.id));
    const double sigma = (los ? n.range_sigma_los_m : n.range_sigma_nlos_m) +
                         n.range_sigma_per_m * dist;
    double range = dist + (los ? 0.0 : n.range_bias_nlos_m) + rng.gaussian(sigma);
    if (range < 0.0) range = 0.0;

    const Vec2 local = world_to_relative(truth, anchor.position);
    const double bearing =
        normalize_angle(std::atan2(local.y, local.x) + rng.gaussian(n.bearing_sigma_rad));

    out.measurements.push_back({anchor.id, range, bearing, truth.timestamp});
    out.rss.emplace(anchor.id, synthetic_rss(dist, los));
  }
  std::sort(out.measurements.begin(), out.measurements.end(),
            [](const TagMeasurement& a, const TagMeasurement& b) {
              return a.anchor_id < b.anchor_id;
            });
  return out;
}

std::vector<SensorSample> synthesize_sensor_stream(const Scenario& s,
                                                   std::span<const Pose> truth,
                                                   const std::optional<TimeSpan>& indoor) {
  constexpr double kGpsOutdoor = 40.0;
  constexpr double kGpsIndoor = 5.0;
  constexpr double kGpsSigma = 2.0;
  constexpr double kGpsRampS = 3.0;
  constexpr double kLuxOutdoor = 10000.0;
  constexpr double kLuxIndoor = 100.0;
  constexpr double kAccelMoving = 0.4;
  constexpr double kAccelStill = 0.02;

  if (indoor) {
    const double total = truth.empty() ? 0.0 : truth.back().timestamp;
    if (indoor->begin_s < 0.0 || indoor->begin_s > total || indoor->end_s < indoor->begin_s) {
      throw ValidationError("sensor stream: indoor interval outside the trajectory span");
    }
  }

  std::vector<SensorSample> stream;
  stream.reserve(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const Pose& pose = truth[k];
    const double t = pose.timestamp;
    SensorSample sample;
    sample.timestamp = t;

    // GPS decays to the indoor level over a short ramp at entry and recovers
    // symmetrically at exit. Light switches at the doorway.
    double gps_level = kGpsOutdoor;
    double lux_level = kLuxOutdoor;
    if (indoor && t >= indoor->begin_s) {
      if (t < indoor->end_s) {
        const double into = t - indoor->begin_s;
        gps_level = into >= kGpsRampS
                        ? kGpsIndoor
                        : kGpsOutdoor + (kGpsIndoor - kGpsOutdoor) * into / kGpsRampS;
        lux_level = kLuxIndoor;
      } else {
        const double out_for = t - indoor->end_s;
        gps_level = out_for >= kGpsRampS
                        ? kGpsOutdoor
                        : kGpsIndoor + (kGpsOutdoor - kGpsIndoor) * out_for / kGpsRampS;
      }
    }

    CounterRng gps_rng(s.seed, kRngSensorGps, k);
    CounterRng light_rng(s.seed, kRngSensorLight, k);
    CounterRng accel_rng(s.seed, kRngSensorAccel, k);
    CounterRng mag_rng(s.seed, kRngSensorMag, k);

    sample.gps_snr = std::max(0.0, gps_level + gps_rng.gaussian(kGpsSigma));
    sample.light_lux = std::max(0.0, lux_level + light_rng.gaussian(0.02 * lux_level));

    const bool moving =
        k > 0 && euclidean_distance(pose.position, truth[k - 1].position) > 0.0;
    const double accel_level = moving ? kAccelMoving : kAccelStill;
    sample.accel_var = std::max(0.0, accel_level + accel_rng.gaussian(0.1 * accel_level));

    double true_rate = 0.0;
    if (k > 0) {
      const double dt = t - truth[k - 1].timestamp;
      if (dt > 0.0) true_rate = angle_diff(pose.heading, truth[k - 1].heading) / dt;
    }
    sample.gyro_rate = true_rate + s.noise.gyro_drift_rad_per_s;

    double mag = pose.heading + mag_rng.gaussian(s.noise.mag_sigma_rad);
    for (const MagDisturbance& d : s.noise.mag_disturbance) {
      if (t >= d.start_s && t < d.end_s) mag += d.offset_rad;
    }
    sample.mag_heading = normalize_angle(mag);

    stream.push_back(sample);
  }
  return stream;
}

std::vector<SensorSample> synthesize_sensor_stream(const Scenario& s,
                                                   std::span<const Pose> truth) {
  return synthesize_sensor_stream(s, truth, s.indoor);
}

}  // namespace ubiloc

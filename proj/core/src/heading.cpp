#include "ubiloc/heading.hpp"

#include <cmath>
#include <vector>

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

// Cumulative trapezoidal gyro integral across the window; cum[i] is the
// rotation from window[0] to window[i].
std::vector<double> gyro_cumulative(std::span<const SensorSample> w) {
  std::vector<double> cum(w.size(), 0.0);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double dt = w[i].timestamp - w[i - 1].timestamp;
    cum[i] = cum[i - 1] + 0.5 * (w[i - 1].gyro_rate + w[i].gyro_rate) * dt;
  }
  return cum;
}

}  // namespace

HeadingEstimate initial_heading(std::span<const SensorSample> startup) {
  if (startup.empty()) throw Error("initial_heading: empty startup window");
  std::vector<double> mags;
  mags.reserve(startup.size());
  for (const SensorSample& s : startup) mags.push_back(s.mag_heading);
  HeadingEstimate est;
  est.heading = normalize_angle(circular_mean(mags));
  est.source = HeadingSource::MagAnchored;
  est.anchored_at = startup.front().timestamp;
  return est;
}

HeadingEstimate fuse_heading(const HeadingEstimate& prev,
                             std::span<const SensorSample> window,
                             const HeadingConfig& config) {
  if (window.empty()) throw Error("fuse_heading: empty window");

  const auto cum = gyro_cumulative(window);

  HeadingEstimate out;
  out.source = HeadingSource::GyroPropagated;
  out.anchored_at = prev.anchored_at;
  out.heading = prev.heading;
  if (window.size() >= 2) {
    // Propagate across the newest step only; earlier steps were already
    // applied on previous calls.
    const double newest_step = cum[window.size() - 1] - cum[window.size() - 2];
    out.heading = normalize_angle(prev.heading + newest_step);
  }

  if (window.size() >= 2) {
    const double gyro_change = cum.back();
    const double mag_change = angle_diff(window.back().mag_heading, window.front().mag_heading);

    std::vector<double> mags;
    mags.reserve(window.size());
    for (const SensorSample& s : window) mags.push_back(s.mag_heading);
    const double mag_std = circular_stddev(mags);

    const bool reliable =
        std::abs(angle_diff(gyro_change, mag_change)) <= config.agree_eps_rad &&
        mag_std < config.mag_std_gate_rad;

    if (reliable) {
      // Window-mean magnetometer heading, each sample carried forward to the
      // newest timestamp by the gyro so a turn does not lag the anchor.
      std::vector<double> advanced;
      advanced.reserve(window.size());
      for (std::size_t i = 0; i < window.size(); ++i) {
        advanced.push_back(window[i].mag_heading + (cum.back() - cum[i]));
      }
      out.heading = normalize_angle(circular_mean(advanced));
      out.source = HeadingSource::MagAnchored;
      out.anchored_at = window.back().timestamp;
    }
  }

  return out;
}

Vec2 project_anchor(const Pose& pose_estimate, const TagMeasurement& m) {
  const Vec2 local{m.range_m * std::cos(m.bearing_rad), m.range_m * std::sin(m.bearing_rad)};
  return relative_to_world(pose_estimate, local);
}

Vec2 one_shot_fix(const HeadingEstimate& heading, const TagMeasurement& m,
                  const AnchorTag& anchor) {
  if (anchor.id != m.anchor_id) {
    throw ConfigError("one_shot_fix: measurement anchor id " + std::to_string(m.anchor_id) +
                      " does not match anchor " + std::to_string(anchor.id));
  }
  const Vec2 local{m.range_m * std::cos(m.bearing_rad), m.range_m * std::sin(m.bearing_rad)};
  return anchor.position - rotate(heading.heading, local);
}

}  // namespace ubiloc

#pragma once

#include <span>

#include "ubiloc/geometry.hpp"
#include "ubiloc/sensors.hpp"

namespace ubiloc {

enum class HeadingSource { MagAnchored, GyroPropagated };

struct HeadingEstimate {
  double heading = 0.0;  // rad, [-pi, pi)
  HeadingSource source = HeadingSource::MagAnchored;
  double anchored_at = 0.0;  // time of the last reliable magnetometer anchor
};

struct HeadingConfig {
  std::size_t window = 10;        // samples considered per fusion step
  double agree_eps_rad = 0.05;    // gyro/mag heading-change agreement gate
  double mag_std_gate_rad = 0.1;  // within-window circular stddev gate
};

// Window-mean magnetometer heading; used once at trajectory start.
HeadingEstimate initial_heading(std::span<const SensorSample> startup);

// One fusion step over the most recent samples (newest last). The gyro
// propagates the heading across the newest step (trapezoidal). The
// magnetometer is declared reliable when its heading change over the window
// agrees with the gyro-integrated change within agree_eps_rad and its
// within-window circular stddev stays under the gate; if so the heading is
// re-anchored to the window-mean magnetometer heading carried forward to the
// newest timestamp by the gyro.
HeadingEstimate fuse_heading(const HeadingEstimate& prev,
                             std::span<const SensorSample> window,
                             const HeadingConfig& config = {});

// World position of the observed anchor as seen from the pose estimate:
// the polar measurement converted to Cartesian and rotated into the world.
Vec2 project_anchor(const Pose& pose_estimate, const TagMeasurement& m);

// Inverse of the projection: the user position implied by one measurement of
// an anchor at a known location, given the current heading estimate.
Vec2 one_shot_fix(const HeadingEstimate& heading, const TagMeasurement& m,
                  const AnchorTag& anchor);

}  // namespace ubiloc

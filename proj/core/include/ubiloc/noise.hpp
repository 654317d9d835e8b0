#pragma once

#include <vector>

namespace ubiloc {

// Constant heading offset applied to the magnetometer during [start_s, end_s].
struct MagDisturbance {
  double start_s = 0.0;
  double end_s = 0.0;
  double offset_rad = 0.0;
};

// Measurement and sensor noise calibration. Range sigma grows linearly with
// the true distance; NLOS paths get a larger base sigma plus a positive bias.
struct NoiseModel {
  double range_sigma_los_m = 0.05;
  double range_sigma_nlos_m = 0.15;
  double range_bias_nlos_m = 0.10;
  double range_sigma_per_m = 0.01;
  double bearing_sigma_rad = 0.0873;  // 5 deg
  double detection_radius_m = 15.0;
  double gyro_drift_rad_per_s = 0.005;
  double mag_sigma_rad = 0.05;
  std::vector<MagDisturbance> mag_disturbance;
};

// Same detection radius, all stochastic terms zeroed.
inline NoiseModel zero_noise(NoiseModel base) {
  base.range_sigma_los_m = 0.0;
  base.range_sigma_nlos_m = 0.0;
  base.range_bias_nlos_m = 0.0;
  base.range_sigma_per_m = 0.0;
  base.bearing_sigma_rad = 0.0;
  base.gyro_drift_rad_per_s = 0.0;
  base.mag_sigma_rad = 0.0;
  base.mag_disturbance.clear();
  return base;
}

}  // namespace ubiloc

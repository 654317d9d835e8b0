#pragma once

namespace ubiloc {

// One synchronized sample of the auxiliary (non-UWB) sensors.
struct SensorSample {
  double timestamp = 0.0;    // s, strictly increasing within a stream
  double gps_snr = 0.0;      // synthetic GPS quality proxy, >= 0
  double light_lux = 0.0;    // >= 0
  double accel_var = 0.0;    // (m/s^2)^2, >= 0
  double gyro_rate = 0.0;    // rad/s, heading rate
  double mag_heading = 0.0;  // rad, [-pi, pi)
};

}  // namespace ubiloc

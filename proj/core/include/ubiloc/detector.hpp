#pragma once

#include <optional>

#include "ubiloc/sensors.hpp"

namespace ubiloc {

enum class DetectorMode { Outdoor, Transition, Indoor };
enum class DetectorEvent { WentIndoor, WentOutdoor };

struct DetectorConfig {
  double gps_low_threshold = 15.0;   // below: outdoor -> transition
  double gps_high_threshold = 25.0;  // above: indoor -> transition (hysteresis)
  double light_indoor_threshold_lux = 200.0;
  double dwell_s = 3.0;  // condition must persist this long before committing
  double ema_alpha = 0.2;
  // Accelerometer activity is tracked but only gates transitions when enabled.
  bool gate_on_accel = false;
  double accel_moving_threshold = 0.05;
};

struct DetectorState {
  DetectorMode mode = DetectorMode::Outdoor;
  double mode_entered_at = 0.0;
  double gps_ema = 0.0;
  double light_ema = 0.0;
  double accel_ema = 0.0;
  // Stable mode a pending transition started from; meaningful in Transition.
  DetectorMode transition_from = DetectorMode::Outdoor;
  bool has_sample = false;
  double last_timestamp = 0.0;
};

struct DetectorStep {
  DetectorState state;
  std::optional<DetectorEvent> event;
};

// Advances the outdoor/indoor state machine by one sample. Samples must arrive
// in strictly increasing timestamp order; violations throw OrderingError.
// Transitions commit only after the gating condition has persisted for
// dwell_s and the light level confirms the target environment; a transition
// that clears before the dwell elapses reverts silently.
DetectorStep detector_step(const DetectorState& state, const SensorSample& sample,
                           const DetectorConfig& config);

}  // namespace ubiloc

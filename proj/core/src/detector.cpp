#include "ubiloc/detector.hpp"

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

double ema(double prev, double sample, double alpha) {
  return alpha * sample + (1.0 - alpha) * prev;
}

}  // namespace

DetectorStep detector_step(const DetectorState& state, const SensorSample& sample,
                           const DetectorConfig& config) {
  if (state.has_sample && sample.timestamp <= state.last_timestamp) {
    throw OrderingError("detector_step: samples must have strictly increasing timestamps");
  }

  DetectorState st = state;
  if (!st.has_sample) {
    st.gps_ema = sample.gps_snr;
    st.light_ema = sample.light_lux;
    st.accel_ema = sample.accel_var;
    st.mode_entered_at = sample.timestamp;
    st.has_sample = true;
  } else {
    st.gps_ema = ema(st.gps_ema, sample.gps_snr, config.ema_alpha);
    st.light_ema = ema(st.light_ema, sample.light_lux, config.ema_alpha);
    st.accel_ema = ema(st.accel_ema, sample.accel_var, config.ema_alpha);
  }
  st.last_timestamp = sample.timestamp;

  const bool accel_ok = !config.gate_on_accel || st.accel_ema >= config.accel_moving_threshold;
  std::optional<DetectorEvent> event;

  switch (st.mode) {
    case DetectorMode::Outdoor:
      if (st.gps_ema < config.gps_low_threshold) {
        st.mode = DetectorMode::Transition;
        st.transition_from = DetectorMode::Outdoor;
        st.mode_entered_at = sample.timestamp;
      }
      break;

    case DetectorMode::Indoor:
      if (st.gps_ema > config.gps_high_threshold) {
        st.mode = DetectorMode::Transition;
        st.transition_from = DetectorMode::Indoor;
        st.mode_entered_at = sample.timestamp;
      }
      break;

    case DetectorMode::Transition:
      if (st.transition_from == DetectorMode::Outdoor) {
        if (st.gps_ema >= config.gps_low_threshold) {
          // Condition cleared before the dwell elapsed: revert silently.
          st.mode = DetectorMode::Outdoor;
          st.mode_entered_at = sample.timestamp;
        } else if (sample.timestamp - st.mode_entered_at >= config.dwell_s &&
                   st.light_ema < config.light_indoor_threshold_lux && accel_ok) {
          st.mode = DetectorMode::Indoor;
          st.mode_entered_at = sample.timestamp;
          event = DetectorEvent::WentIndoor;
        }
      } else {
        if (st.gps_ema <= config.gps_high_threshold) {
          st.mode = DetectorMode::Indoor;
          st.mode_entered_at = sample.timestamp;
        } else if (sample.timestamp - st.mode_entered_at >= config.dwell_s &&
                   st.light_ema >= config.light_indoor_threshold_lux && accel_ok) {
          st.mode = DetectorMode::Outdoor;
          st.mode_entered_at = sample.timestamp;
          event = DetectorEvent::WentOutdoor;
        }
      }
      break;
  }

  return {st, event};
}

}  // namespace ubiloc

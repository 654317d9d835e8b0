#include "ubiloc/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

const TagMeasurement& nearest_measurement(std::span<const TagMeasurement> ms) {
  return *std::min_element(ms.begin(), ms.end(),
                           [](const TagMeasurement& a, const TagMeasurement& b) {
                             return std::tie(a.range_m, a.anchor_id) <
                                    std::tie(b.range_m, b.anchor_id);
                           });
}

}  // namespace

std::optional<FixResult> multishot_step(const std::optional<FixResult>& previous,
                                        const HeadingEstimate& heading,
                                        const MeasurementBatch& batch,
                                        const AnchorMap& anchors,
                                        const SelectionPolicy& policy,
                                        const RangeHistory& history,
                                        const MultishotConfig& config) {
  for (const TagMeasurement& m : batch.measurements) {
    if (anchors.find(m.anchor_id) == anchors.end()) {
      throw ConfigError("multishot_step: unknown anchor id " + std::to_string(m.anchor_id));
    }
  }

  const std::map<int, double>* rss =
      policy.kind == SelectionKind::KStrongest ? &batch.rss : nullptr;
  const std::vector<TagMeasurement> selected =
      select(batch.measurements, history, policy, rss);

  if (selected.size() >= 3) {
    std::vector<WeightedRange> inputs;
    inputs.reserve(selected.size());
    for (const TagMeasurement& m : selected) {
      double sigma;
      if (history.has_full_window(m.anchor_id)) {
        sigma = std::sqrt(*history.range_variance(m.anchor_id));
      } else {
        sigma = config.prior_sigma_los_m + config.prior_sigma_per_m * m.range_m;
      }
      const double floor2 = config.sigma_floor_m * config.sigma_floor_m;
      const double weight = 1.0 / std::max(sigma * sigma, floor2);
      inputs.push_back({m.anchor_id, anchors.at(m.anchor_id).position, m.range_m, weight});
    }

    Vec2 init;
    if (previous) {
      init = previous->position;
    } else {
      try {
        init = linear_init(inputs);
      } catch (const GeometryError&) {
        const TagMeasurement& m = nearest_measurement(selected);
        init = one_shot_fix(heading, m, anchors.at(m.anchor_id));
      }
    }
    return solve_fix(inputs, init, config.solver);
  }

  if (!selected.empty()) {
    const TagMeasurement& m = nearest_measurement(selected);
    const AnchorTag& anchor = anchors.at(m.anchor_id);
    Vec2 pos = one_shot_fix(heading, m, anchor);
    if (previous) {
      pos = config.blend_ratio * pos + (1.0 - config.blend_ratio) * previous->position;
    }
    FixResult fix;
    fix.position = pos;
    fix.residual_rms_m = std::abs(euclidean_distance(pos, anchor.position) - m.range_m);
    fix.anchors_used = {m.anchor_id};
    fix.method = FixMethod::OneShot;
    return fix;
  }

  if (!previous) return std::nullopt;
  FixResult fix;
  fix.position = previous->position;
  fix.method = FixMethod::DeadReckoned;
  return fix;
}

TrajectoryResult run_trajectory(const Scenario& scenario, const SelectionPolicy& policy) {
  validate_scenario(scenario);

  const std::vector<Pose> truth = generate_trajectory(scenario);
  const std::vector<SensorSample> stream = synthesize_sensor_stream(scenario, truth);

  AnchorMap anchors;
  for (const AnchorTag& a : scenario.anchors) anchors.emplace(a.id, a);

  MultishotConfig config;
  config.prior_sigma_los_m = scenario.noise.range_sigma_los_m;
  config.prior_sigma_per_m = scenario.noise.range_sigma_per_m;

  const HeadingConfig heading_config;
  HeadingEstimate heading = initial_heading(
      std::span(stream.data(), std::min(heading_config.window, stream.size())));

  DetectorState detector;
  RangeHistory history;
  std::optional<FixResult> previous;
  bool indoor_active = false;

  TrajectoryResult out;
  out.pose_count = truth.size();

  for (std::size_t k = 0; k < truth.size(); ++k) {
    const DetectorStep step = detector_step(detector, stream[k], scenario.detector);
    detector = step.state;
    if (step.event) {
      out.detector_events.emplace_back(stream[k].timestamp, *step.event);
      indoor_active = (*step.event == DetectorEvent::WentIndoor);
    }

    if (k > 0) {
      const std::size_t begin = k + 1 >= heading_config.window ? k + 1 - heading_config.window : 0;
      heading = fuse_heading(heading, std::span(stream.data() + begin, k - begin + 1),
                             heading_config);
    }

    if (!indoor_active) continue;

    const MeasurementBatch batch = synthesize_measurements(truth[k], scenario, k);
    history.update(batch.measurements);
    const std::optional<FixResult> fix =
        multishot_step(previous, heading, batch, anchors, policy, history, config);
    if (!fix) continue;  // nothing visible yet and no position to carry
    previous = fix;
    out.fixes.push_back({truth[k], *fix});
  }

  return out;
}

}  // namespace ubiloc

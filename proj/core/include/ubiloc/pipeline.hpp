#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ubiloc/detector.hpp"
#include "ubiloc/heading.hpp"
#include "ubiloc/select.hpp"
#include "ubiloc/simulate.hpp"
#include "ubiloc/solve.hpp"

namespace ubiloc {

using AnchorMap = std::map<int, AnchorTag>;

struct MultishotConfig {
  double sigma_floor_m = 0.02;  // weights never exceed 1/sigma_floor^2
  double blend_ratio = 0.5;     // one-shot vs dead-reckoned blend, 1-2 anchors
  // Prior range sigma used while an anchor's history window is still short.
  double prior_sigma_los_m = 0.05;
  double prior_sigma_per_m = 0.01;
  SolverOptions solver;
};

// One step of the multishot pipeline: select anchors, weight them by the
// windowed range variance (prior fallback, floored), then
//   >= 3 selected: weighted multilateration, initialized from the previous
//                  fix, else the linearized solution, else a one-shot fix;
//   1-2 selected:  one-shot fix on the nearest selected anchor, blended with
//                  the dead-reckoned previous position;
//   0 selected:    previous position carried forward (dead reckoning).
// Returns nullopt only when nothing was selected and no previous fix exists.
// Unknown anchor ids throw ConfigError.
std::optional<FixResult> multishot_step(const std::optional<FixResult>& previous,
                                        const HeadingEstimate& heading,
                                        const MeasurementBatch& batch,
                                        const AnchorMap& anchors,
                                        const SelectionPolicy& policy,
                                        const RangeHistory& history,
                                        const MultishotConfig& config);

struct PairedFix {
  Pose truth;
  FixResult fix;
};

struct TrajectoryResult {
  std::vector<PairedFix> fixes;  // one per pose while the localizer is active
  std::vector<std::pair<double, DetectorEvent>> detector_events;
  std::size_t pose_count = 0;  // full ground-truth trajectory length
};

// Full closed loop on one scenario: ground-truth trajectory, sensor streams,
// outdoor/indoor detection, heading fusion and the per-pose multishot
// pipeline once the detector reports the user indoors. Deterministic given
// the scenario (including its seed).
TrajectoryResult run_trajectory(const Scenario& scenario, const SelectionPolicy& policy);

}  // namespace ubiloc

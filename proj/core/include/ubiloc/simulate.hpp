#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ubiloc/scenario.hpp"
#include "ubiloc/sensors.hpp"

namespace ubiloc {

// Ground-truth poses sampled at sample_hz along the piecewise-linear waypoint
// path. Heading follows the direction of motion; dwell segments hold position
// and heading. Rejects coincident consecutive waypoints with zero dwell.
std::vector<Pose> generate_trajectory(const Scenario& s);

// True iff no wall blocks the straight path between a and b. Touching a wall
// endpoint counts as blocked (conservative).
bool is_los(Vec2 a, Vec2 b, std::span<const WallSegment> walls);

// Log-distance path loss proxy used by the strongest-anchor heuristic.
double synthetic_rss(double distance_m, bool los);

struct MeasurementBatch {
  std::vector<TagMeasurement> measurements;  // ascending anchor id
  std::map<int, double> rss;                 // synthetic strength, by anchor id
};

// Noisy (range, bearing) observations of every anchor within the detection
// radius, as seen from the true pose. The random substream is keyed by
// (seed, pose_index, anchor_id), so generation order does not matter.
MeasurementBatch synthesize_measurements(const Pose& truth, const Scenario& s,
                                         std::uint64_t pose_index);

// GPS / light / accelerometer / gyro / magnetometer streams matched 1:1 with
// the ground-truth poses. `indoor` marks when the user is inside; nullopt
// means the whole trace is outdoors.
std::vector<SensorSample> synthesize_sensor_stream(const Scenario& s,
                                                   std::span<const Pose> truth,
                                                   const std::optional<TimeSpan>& indoor);

// Uses the scenario's own indoor span.
std::vector<SensorSample> synthesize_sensor_stream(const Scenario& s,
                                                   std::span<const Pose> truth);

}  // namespace ubiloc

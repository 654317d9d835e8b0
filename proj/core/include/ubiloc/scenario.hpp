#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ubiloc/detector.hpp"
#include "ubiloc/geometry.hpp"
#include "ubiloc/noise.hpp"

namespace ubiloc {

struct WallSegment {
  Vec2 a;
  Vec2 b;
};

struct Waypoint {
  Vec2 position;
  double dwell_s = 0.0;
};

struct TimeSpan {
  double begin_s = 0.0;
  double end_s = std::numeric_limits<double>::infinity();
};

// Everything a deterministic run needs: floor plan, anchor layout, trajectory
// waypoints, noise calibration and the seed.
struct Scenario {
  std::string name;
  std::vector<WallSegment> walls;
  std::vector<AnchorTag> anchors;
  std::vector<Waypoint> waypoints;
  double speed_mps = 1.0;
  double sample_hz = 10.0;
  NoiseModel noise;
  std::uint64_t seed = 1;
  DetectorConfig detector;
  // Span of the trajectory spent inside; defaults to the whole run.
  TimeSpan indoor;
};

// Throws ValidationError on any violated invariant.
void validate_scenario(const Scenario& s);

// Non-fatal issues worth surfacing at load time (e.g. collinear anchors).
std::vector<std::string> scenario_warnings(const Scenario& s);

double trajectory_duration_s(const Scenario& s);

bool anchors_collinear(std::span<const AnchorTag> anchors);

// Bundled reference layouts: a corridor loop with 12 anchors and a
// three-room apartment with 8 anchors.
Scenario campus_scenario();
Scenario apartment_scenario();

}  // namespace ubiloc

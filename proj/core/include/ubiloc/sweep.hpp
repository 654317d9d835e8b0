#pragma once

#include <span>
#include <string>
#include <vector>

#include "ubiloc/pipeline.hpp"

namespace ubiloc {

enum class SweepAxis { Selection, K, Density, Sigma };

SweepAxis parse_sweep_axis(const std::string& name);  // throws ConfigError
std::string sweep_axis_name(SweepAxis axis);

struct SweepRow {
  std::string axis_value;
  double median_m = 0.0;
  double p90_m = 0.0;
  double mean_m = 0.0;
};

struct SweepOptions {
  SelectionPolicy base_policy;  // policy for axes that do not override it
  int replications = 1;         // seeds base_seed .. base_seed+reps-1
  std::size_t max_threads = 0;  // 0 = hardware concurrency
};

// Runs the full pipeline for every (axis value, replication) cell and
// aggregates per-pose errors per value. Axis values are strings as they
// appear on the CLI:
//   selection: all | nearest | farthest | least-variance | strongest
//   k:         positive integers
//   density:   anchor-count prefixes (ascending id), <= scenario anchor count
//   sigma:     LOS range sigma in meters (NLOS sigma floored to keep >= LOS)
// All values are validated before any run. Cells execute independently (up
// to max_threads at once) and the output is identical for any thread count.
std::vector<SweepRow> sweep(const Scenario& scenario, SweepAxis axis,
                            std::span<const std::string> values,
                            const SweepOptions& options);

}  // namespace ubiloc

#include "ubiloc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <thread>

#include "ubiloc/error.hpp"
#include "ubiloc/metrics.hpp"

namespace ubiloc {

namespace {

int parse_positive_int(const std::string& text, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
    throw ConfigError(std::string(what) + ": expected a positive integer, got '" + text + "'");
  }
  return value;
}

double parse_nonnegative_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !(value >= 0.0)) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + ": expected a number >= 0, got '" + text + "'");
  }
}

struct ParsedValue {
  std::string label;
  SelectionKind kind = SelectionKind::KNearest;  // Selection axis
  int count = 0;                                 // K / Density axes
  double sigma = 0.0;                            // Sigma axis
};

ParsedValue parse_axis_value(SweepAxis axis, const std::string& text, const Scenario& scenario) {
  ParsedValue v;
  v.label = text;
  switch (axis) {
    case SweepAxis::Selection:
      v.kind = parse_selection_kind(text);
      break;
    case SweepAxis::K:
      v.count = parse_positive_int(text, "k value");
      break;
    case SweepAxis::Density:
      v.count = parse_positive_int(text, "density value");
      if (static_cast<std::size_t>(v.count) > scenario.anchors.size()) {
        throw ConfigError("density value " + text + " exceeds the scenario anchor count");
      }
      break;
    case SweepAxis::Sigma:
      v.sigma = parse_nonnegative_double(text, "sigma value");
      break;
  }
  return v;
}

void apply_axis_value(SweepAxis axis, const ParsedValue& v, Scenario& scenario,
                      SelectionPolicy& policy) {
  switch (axis) {
    case SweepAxis::Selection:
      policy.kind = v.kind;
      break;
    case SweepAxis::K:
      policy.k = v.count;
      break;
    case SweepAxis::Density: {
      std::sort(scenario.anchors.begin(), scenario.anchors.end(),
                [](const AnchorTag& a, const AnchorTag& b) { return a.id < b.id; });
      scenario.anchors.resize(static_cast<std::size_t>(v.count));
      break;
    }
    case SweepAxis::Sigma:
      scenario.noise.range_sigma_los_m = v.sigma;
      // Keep the NLOS sigma at or above the LOS sigma.
      scenario.noise.range_sigma_nlos_m =
          std::max(scenario.noise.range_sigma_nlos_m, v.sigma);
      break;
  }
}

}  // namespace

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "selection") return SweepAxis::Selection;
  if (name == "k") return SweepAxis::K;
  if (name == "density") return SweepAxis::Density;
  if (name == "sigma") return SweepAxis::Sigma;
  throw ConfigError("unknown sweep axis '" + name + "' (expected selection|k|density|sigma)");
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Selection: return "selection";
    case SweepAxis::K: return "k";
    case SweepAxis::Density: return "density";
    case SweepAxis::Sigma: return "sigma";
  }
  return "unknown";
}

std::vector<SweepRow> sweep(const Scenario& scenario, SweepAxis axis,
                            std::span<const std::string> values,
                            const SweepOptions& options) {
  if (options.replications < 1) throw ConfigError("sweep: replications must be >= 1");
  if (values.empty()) throw ConfigError("sweep: at least one axis value required");
  validate_scenario(scenario);

  // Validate every value before running anything.
  std::vector<ParsedValue> parsed;
  parsed.reserve(values.size());
  for (const std::string& v : values) parsed.push_back(parse_axis_value(axis, v, scenario));

  struct Cell {
    std::size_t value_index;
    int replication;
  };
  std::vector<Cell> cells;
  cells.reserve(parsed.size() * static_cast<std::size_t>(options.replications));
  for (std::size_t vi = 0; vi < parsed.size(); ++vi) {
    for (int rep = 0; rep < options.replications; ++rep) cells.push_back({vi, rep});
  }

  // Cells are independent; results land in per-cell slots so the aggregate
  // is identical for any thread count.
  std::vector<std::vector<double>> cell_errors(cells.size());
  std::vector<std::exception_ptr> cell_failures(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const Cell& cell = cells[i];
        Scenario run_scenario = scenario;
        SelectionPolicy policy = options.base_policy;
        apply_axis_value(axis, parsed[cell.value_index], run_scenario, policy);
        run_scenario.seed = scenario.seed + static_cast<std::uint64_t>(cell.replication);
        const TrajectoryResult result = run_trajectory(run_scenario, policy);
        std::vector<double>& errors = cell_errors[i];
        errors.reserve(result.fixes.size());
        for (const PairedFix& p : result.fixes) {
          errors.push_back(euclidean_distance(p.truth.position, p.fix.position));
        }
      } catch (...) {
        cell_failures[i] = std::current_exception();
      }
    }
  };

  std::size_t n_threads = options.max_threads != 0
                              ? options.max_threads
                              : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, cells.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (const std::exception_ptr& failure : cell_failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SweepRow> rows;
  rows.reserve(parsed.size());
  for (std::size_t vi = 0; vi < parsed.size(); ++vi) {
    std::vector<double> pooled;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].value_index != vi) continue;
      pooled.insert(pooled.end(), cell_errors[i].begin(), cell_errors[i].end());
    }
    if (pooled.empty()) {
      throw Error("sweep: no localized poses for axis value '" + parsed[vi].label + "'");
    }
    std::sort(pooled.begin(), pooled.end());
    double sum = 0.0;
    for (double e : pooled) sum += e;
    rows.push_back({parsed[vi].label, percentile(std::span<const double>(pooled), 0.5),
                    percentile(std::span<const double>(pooled), 0.9),
                    sum / static_cast<double>(pooled.size())});
  }
  return rows;
}

}  // namespace ubiloc

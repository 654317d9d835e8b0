// ubiloc command line: run one scenario, sweep a parameter axis, or validate
// a scenario file without running it.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ubiloc/error.hpp"
#include "ubiloc/metrics.hpp"
#include "ubiloc/pipeline.hpp"
#include "ubiloc/report.hpp"
#include "ubiloc/scenario_io.hpp"
#include "ubiloc/sweep.hpp"

namespace {

struct CommonOptions {
  std::string scenario_path;
  std::string selection = "nearest";
  int k = 6;
  std::string seed;  // empty = scenario default
  std::string out_dir = ".";
};

struct SweepArgs {
  std::string axis;
  std::string values;
  int reps = 1;
};

std::vector<std::string> parse_values(const std::string& arg) {
  std::vector<std::string> out;
  const auto dots = arg.find("..");
  if (dots != std::string::npos) {
    // Integer range, e.g. 1..12.
    try {
      const int lo = std::stoi(arg.substr(0, dots));
      const int hi = std::stoi(arg.substr(dots + 2));
      if (lo > hi) throw std::invalid_argument(arg);
      for (int v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
      return out;
    } catch (const std::exception&) {
      throw ubiloc::ConfigError("--values: malformed range '" + arg + "'");
    }
  }
  std::size_t start = 0;
  while (start <= arg.size()) {
    const std::size_t comma = arg.find(',', start);
    const std::string token = arg.substr(start, comma == std::string::npos ? arg.size() - start
                                                                           : comma - start);
    if (!token.empty()) out.push_back(token);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ubiloc::ConfigError("--values: no values given");
  return out;
}

std::size_t threads_from_env() {
  const char* env = std::getenv("UBILOC_THREADS");
  if (env == nullptr) return 0;
  try {
    const long v = std::stol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  return 0;
}

ubiloc::Scenario load_configured_scenario(const CommonOptions& opt) {
  ubiloc::Scenario scenario = ubiloc::load_scenario(opt.scenario_path);
  if (!opt.seed.empty()) {
    try {
      std::size_t used = 0;
      scenario.seed = std::stoull(opt.seed, &used);
      if (used != opt.seed.size()) throw std::invalid_argument(opt.seed);
    } catch (const std::exception&) {
      throw ubiloc::ConfigError("--seed: expected an unsigned integer, got '" + opt.seed + "'");
    }
  }
  for (const std::string& warning : ubiloc::scenario_warnings(scenario)) {
    std::cerr << "warning: " << warning << "\n";
  }
  return scenario;
}

ubiloc::SelectionPolicy policy_from(const CommonOptions& opt) {
  ubiloc::SelectionPolicy policy;
  policy.kind = ubiloc::parse_selection_kind(opt.selection);
  policy.k = opt.k;
  if (policy.kind != ubiloc::SelectionKind::All && policy.k < 1) {
    throw ubiloc::ConfigError("--k must be >= 1");
  }
  return policy;
}

int cmd_run(const CommonOptions& opt) {
  const ubiloc::Scenario scenario = load_configured_scenario(opt);
  const ubiloc::SelectionPolicy policy = policy_from(opt);

  const ubiloc::TrajectoryResult result = ubiloc::run_trajectory(scenario, policy);
  if (result.fixes.empty()) {
    std::cerr << "error: no poses were localized (did the detector ever fire?)\n";
    return 1;
  }
  const ubiloc::ErrorSeries errors = ubiloc::compute_errors(result.fixes);
  const auto cdf_points = ubiloc::cdf(errors);

  ubiloc::RunSummary summary;
  summary.median_m = ubiloc::percentile(errors, 0.5);
  summary.p90_m = ubiloc::percentile(errors, 0.9);
  double sum = 0.0;
  for (const ubiloc::ErrorSample& e : errors) sum += e.error_m;
  summary.mean_m = sum / static_cast<double>(errors.size());
  summary.n_poses = errors.size();
  summary.scenario = scenario.name;
  summary.policy = ubiloc::selection_kind_name(policy.kind);
  summary.k = policy.k;
  summary.seed = scenario.seed;

  const std::filesystem::path out_dir(opt.out_dir);
  std::filesystem::create_directories(out_dir);
  ubiloc::write_file_atomic(out_dir / "poses.csv", ubiloc::pose_csv(result.fixes));
  ubiloc::write_file_atomic(out_dir / "cdf.csv", ubiloc::cdf_csv(cdf_points));
  ubiloc::write_file_atomic(out_dir / "summary.json", ubiloc::summary_json(summary));

  std::cout << "scenario=" << scenario.name << " policy=" << summary.policy
            << " k=" << summary.k << " seed=" << summary.seed
            << " n_poses=" << summary.n_poses << "\n";
  std::cout << "median_m=" << summary.median_m << " p90_m=" << summary.p90_m
            << " mean_m=" << summary.mean_m << "\n";
  return 0;
}

int cmd_sweep(const CommonOptions& opt, const SweepArgs& args) {
  const ubiloc::Scenario scenario = load_configured_scenario(opt);

  const ubiloc::SweepAxis axis = ubiloc::parse_sweep_axis(args.axis);
  const std::vector<std::string> values = parse_values(args.values);

  ubiloc::SweepOptions options;
  options.base_policy = policy_from(opt);
  options.replications = args.reps;
  options.max_threads = threads_from_env();

  const std::vector<ubiloc::SweepRow> rows = ubiloc::sweep(scenario, axis, values, options);

  const std::filesystem::path out_dir(opt.out_dir);
  std::filesystem::create_directories(out_dir);
  const std::string file_name = "sweep_" + ubiloc::sweep_axis_name(axis) + ".csv";
  ubiloc::write_file_atomic(out_dir / file_name, ubiloc::sweep_csv(rows));

  std::cout << "axis_value median_m p90_m mean_m\n";
  for (const ubiloc::SweepRow& row : rows) {
    std::cout << row.axis_value << " " << row.median_m << " " << row.p90_m << " "
              << row.mean_m << "\n";
  }
  return 0;
}

int cmd_validate(const CommonOptions& opt) {
  const ubiloc::Scenario scenario = ubiloc::load_scenario(opt.scenario_path);
  for (const std::string& warning : ubiloc::scenario_warnings(scenario)) {
    std::cerr << "warning: " << warning << "\n";
  }
  std::cout << "scenario '" << scenario.name << "' is valid\n";
  std::cout << "  anchors:   " << scenario.anchors.size() << "\n";
  std::cout << "  walls:     " << scenario.walls.size() << "\n";
  std::cout << "  waypoints: " << scenario.waypoints.size() << "\n";
  std::cout << "  duration:  " << ubiloc::trajectory_duration_s(scenario) << " s at "
            << scenario.sample_hz << " Hz\n";
  std::cout << "  seed:      " << scenario.seed << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UWB anchor-based indoor localization: simulator, solver and evaluation runner"};
  app.require_subcommand(1);

  CommonOptions opt;
  SweepArgs sweep_args;

  CLI::App* run = app.add_subcommand("run", "Run one scenario and write poses/CDF/summary files");
  run->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  run->add_option("--selection", opt.selection,
                  "Anchor selection policy: all|nearest|farthest|least-variance|strongest");
  run->add_option("--k", opt.k, "Anchors kept by the k-policies");
  run->add_option("--seed", opt.seed, "Override the scenario seed");
  run->add_option("--out", opt.out_dir, "Output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one axis and write a per-value CSV");
  sweep->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--axis", sweep_args.axis, "Sweep axis: selection|k|density|sigma")->required();
  sweep->add_option("--values", sweep_args.values, "Comma list (3,6,9) or integer range (1..12)")
      ->required();
  sweep->add_option("--reps", sweep_args.reps, "Replications per value (seeds seed..seed+reps-1)");
  sweep->add_option("--selection", opt.selection, "Base selection policy");
  sweep->add_option("--k", opt.k, "Base k");
  sweep->add_option("--seed", opt.seed, "Override the scenario seed");
  sweep->add_option("--out", opt.out_dir, "Output directory");

  CLI::App* validate = app.add_subcommand("validate", "Parse and check a scenario without running");
  validate->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opt);
    if (sweep->parsed()) return cmd_sweep(opt, sweep_args);
    if (validate->parsed()) return cmd_validate(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

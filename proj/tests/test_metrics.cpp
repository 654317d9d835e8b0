#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "ubiloc/error.hpp"
#include "ubiloc/metrics.hpp"
#include "ubiloc/sweep.hpp"

using namespace ubiloc;

namespace {

ErrorSeries series_of(std::initializer_list<double> values) {
  ErrorSeries s;
  double t = 0.0;
  for (double v : values) s.push_back({t += 1.0, v, FixMethod::Multilateration});
  return s;
}

PairedFix pair_at(Vec2 truth, Vec2 est, double t) {
  PairedFix p;
  p.truth = {truth, 0.0, t};
  p.fix.position = est;
  return p;
}

}  // namespace

TEST_CASE("compute_errors is the per-pose euclidean distance") {
  std::vector<PairedFix> pairs = {pair_at({0, 0}, {0, 0}, 1.0), pair_at({0, 0}, {3, 4}, 2.0),
                                  pair_at({2, 2}, {2, 1}, 3.0)};
  const ErrorSeries errors = compute_errors(pairs);
  REQUIRE(errors.size() == 3);
  CHECK(errors[0].error_m == 0.0);
  CHECK(errors[1].error_m == doctest::Approx(5.0));
  CHECK(errors[2].error_m == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)compute_errors({}), Error);
}

TEST_CASE("cdf follows the empirical definition") {
  const auto points = cdf(series_of({3.0, 1.0, 2.0}));
  REQUIRE(points.size() == 3);
  CHECK(points[0].error_m == 1.0);
  CHECK(points[0].fraction == doctest::Approx(1.0 / 3));
  CHECK(points[1].error_m == 2.0);
  CHECK(points[1].fraction == doctest::Approx(2.0 / 3));
  CHECK(points[2].error_m == 3.0);
  CHECK(points[2].fraction == doctest::Approx(1.0));

  const auto ties = cdf(series_of({2.0, 2.0}));
  REQUIRE(ties.size() == 2);
  CHECK(ties[0].error_m == 2.0);
  CHECK(ties[0].fraction == doctest::Approx(0.5));
  CHECK(ties[1].fraction == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)cdf({}), Error);
}

TEST_CASE("cdf is monotone and ends exactly at one") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    ErrorSeries s;
    const int n = 1 + static_cast<int>(u(rng) * 40);
    for (int i = 0; i < n; ++i) s.push_back({static_cast<double>(i), u(rng), {}});
    const auto points = cdf(s);
    CHECK(points.back().fraction == 1.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
      CHECK(points[i].error_m >= points[i - 1].error_m);
      CHECK(points[i].fraction >= points[i - 1].fraction);
    }
  }
}

TEST_CASE("percentile interpolates the empirical quantile") {
  CHECK(percentile(series_of({1.0, 2.0, 3.0}), 0.5) == doctest::Approx(2.0));
  CHECK(percentile(series_of({1.0, 2.0, 3.0, 4.0}), 0.5) == doctest::Approx(2.5));
  CHECK(percentile(series_of({5.0, 1.0, 3.0}), 0.0) == doctest::Approx(1.0));
  CHECK(percentile(series_of({5.0, 1.0, 3.0}), 1.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS((void)percentile(series_of({1.0}), 1.5), Error);
  CHECK_THROWS_AS((void)percentile(series_of({1.0}), -0.1), Error);
}

TEST_CASE("median equals the cdf read at fraction one half") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    ErrorSeries s;
    const int n = 1 + static_cast<int>(u(rng) * 30);
    for (int i = 0; i < n; ++i) s.push_back({static_cast<double>(i), u(rng), {}});
    const auto points = cdf(s);
    const double median = percentile(s, 0.5);
    CHECK(median == doctest::Approx(oracle::read_cdf_at(points, 0.5)).epsilon(1e-12));
  }
}

TEST_CASE("sweep validates inputs before running") {
  const Scenario s = apartment_scenario();
  const std::string bad_axis_values[] = {"nope"};
  CHECK_THROWS_AS((void)sweep(s, SweepAxis::Selection, bad_axis_values, {}), ConfigError);
  const std::string bad_density[] = {"50"};
  CHECK_THROWS_AS((void)sweep(s, SweepAxis::Density, bad_density, {}), ConfigError);
  const std::string bad_k[] = {"0"};
  CHECK_THROWS_AS((void)sweep(s, SweepAxis::K, bad_k, {}), ConfigError);
  const std::string ok[] = {"2"};
  SweepOptions opt;
  opt.replications = 0;
  CHECK_THROWS_AS((void)sweep(s, SweepAxis::K, ok, opt), ConfigError);
  CHECK_THROWS_AS((void)parse_sweep_axis("diag"), ConfigError);
}

TEST_CASE("sweep is deterministic and thread-count invariant") {
  const Scenario s = apartment_scenario();
  const std::string values[] = {"2", "6"};
  SweepOptions serial;
  serial.replications = 2;
  serial.max_threads = 1;
  SweepOptions parallel = serial;
  parallel.max_threads = 4;
  const auto rows_a = sweep(s, SweepAxis::K, values, serial);
  const auto rows_b = sweep(s, SweepAxis::K, values, parallel);
  REQUIRE(rows_a.size() == 2);
  REQUIRE(rows_b.size() == 2);
  for (std::size_t i = 0; i < rows_a.size(); ++i) {
    CHECK(rows_a[i].axis_value == rows_b[i].axis_value);
    CHECK(rows_a[i].median_m == rows_b[i].median_m);
    CHECK(rows_a[i].p90_m == rows_b[i].p90_m);
    CHECK(rows_a[i].mean_m == rows_b[i].mean_m);
  }
}

TEST_CASE("sweep covers every axis") {
  const Scenario s = apartment_scenario();
  SweepOptions opt;
  opt.replications = 1;
  opt.max_threads = 2;

  const std::string sigmas[] = {"0", "0.1"};
  const auto sigma_rows = sweep(s, SweepAxis::Sigma, sigmas, opt);
  REQUIRE(sigma_rows.size() == 2);
  // Identical seeds, scaled noise: error cannot shrink as sigma grows.
  CHECK(sigma_rows[0].median_m <= sigma_rows[1].median_m);

  const std::string densities[] = {"3", "8"};
  const auto density_rows = sweep(s, SweepAxis::Density, densities, opt);
  REQUIRE(density_rows.size() == 2);
  CHECK(density_rows[0].axis_value == "3");

  const std::string kinds[] = {"all", "nearest", "strongest"};
  const auto kind_rows = sweep(s, SweepAxis::Selection, kinds, opt);
  REQUIRE(kind_rows.size() == 3);
  for (const SweepRow& row : kind_rows) {
    CHECK(row.median_m > 0.0);
    CHECK(row.p90_m >= row.median_m);
  }
}

TEST_CASE("sweep aggregates are replication-order invariant by construction") {
  // Pooled aggregation must match a manual pooled computation over the same
  // replication seeds, in any order.
  const Scenario s = apartment_scenario();
  const std::string values[] = {"6"};
  SweepOptions opt;
  opt.replications = 3;
  opt.max_threads = 2;
  const auto rows = sweep(s, SweepAxis::K, values, opt);
  REQUIRE(rows.size() == 1);

  std::vector<double> pooled;
  for (const int rep : {2, 0, 1}) {  // shuffled order
    Scenario run = s;
    run.seed = s.seed + rep;
    SelectionPolicy policy;
    policy.k = 6;
    const auto result = run_trajectory(run, policy);
    for (const PairedFix& p : result.fixes) {
      pooled.push_back(euclidean_distance(p.truth.position, p.fix.position));
    }
  }
  std::sort(pooled.begin(), pooled.end());
  CHECK(rows[0].median_m == doctest::Approx(percentile(std::span<const double>(pooled), 0.5))
                                .epsilon(1e-12));
}

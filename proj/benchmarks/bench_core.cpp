#include <benchmark/benchmark.h>

#include "ubiloc/pipeline.hpp"
#include "ubiloc/simulate.hpp"
#include "ubiloc/solve.hpp"

namespace {

using namespace ubiloc;

std::vector<WeightedRange> noisy_instance() {
  const Vec2 truth{3.2, 4.1};
  std::vector<WeightedRange> inputs;
  const Vec2 positions[] = {{0, 0}, {10, 0}, {10, 8}, {0, 8}, {5, -1}, {6, 9}};
  int id = 1;
  for (const Vec2& p : positions) {
    const double d = euclidean_distance(truth, p);
    inputs.push_back({id, p, d + 0.05 * ((id % 3) - 1), 1.0 / (0.05 * 0.05)});
    ++id;
  }
  return inputs;
}

void BM_LinearInit(benchmark::State& state) {
  const auto inputs = noisy_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_init(inputs));
  }
}
BENCHMARK(BM_LinearInit);

void BM_SolveFix(benchmark::State& state) {
  const auto inputs = noisy_instance();
  const Vec2 init = linear_init(inputs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fix(inputs, init));
  }
}
BENCHMARK(BM_SolveFix);

void BM_IsLos(benchmark::State& state) {
  const Scenario s = campus_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_los({2.5, 2.2}, {22.5, 14.0}, s.walls));
  }
}
BENCHMARK(BM_IsLos);

void BM_SynthesizeMeasurements(benchmark::State& state) {
  const Scenario s = campus_scenario();
  const Pose pose{{15.0, 2.2}, 0.0, 42.0};
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_measurements(pose, s, k++));
  }
}
BENCHMARK(BM_SynthesizeMeasurements);

void BM_RunTrajectoryCampus(benchmark::State& state) {
  const Scenario s = campus_scenario();
  const SelectionPolicy policy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trajectory(s, policy));
  }
}
BENCHMARK(BM_RunTrajectoryCampus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

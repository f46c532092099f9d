#include <benchmark/benchmark.h>

#include <memory>

#include "vafex/episode_runner.hpp"
#include "vafex/extraction.hpp"
#include "vafex/mountain_car.hpp"

namespace {

// End-to-end ordering extraction from scripted trajectories; range is the
// episode count.
void BM_extract_ordering(benchmark::State& state) {
  auto catalog = std::make_shared<const vafex::ArgumentCatalog>(
      vafex::generate_mc_catalog({20, 20}));
  vafex::TrajectorySet log;
  vafex::run_mountain_car_episodes(
      vafex::scripted_mc_joint_policy(), {},
      {static_cast<int>(state.range(0)), 1234, 1}, &log);

  vafex::ExtractionConfig config;
  config.default_ordering = vafex::catalog_order(*catalog);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vafex::extract_ordering(log, *catalog, 0, config));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(log.total_steps()));
}

void BM_build_apg(benchmark::State& state) {
  auto catalog = std::make_shared<const vafex::ArgumentCatalog>(
      vafex::generate_mc_catalog({20, 20}));
  vafex::TrajectorySet log;
  vafex::run_mountain_car_episodes(vafex::scripted_mc_joint_policy(), {},
                                   {50, 77, 1}, &log);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vafex::build_apg(log, *catalog, 0));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(log.total_steps()));
}

}  // namespace

BENCHMARK(BM_extract_ordering)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_apg)->Unit(benchmark::kMillisecond);

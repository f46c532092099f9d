#include <benchmark/benchmark.h>

#include <random>

#include "vafex/argumentation.hpp"
#include "vafex/rng.hpp"

namespace {

vafex::ArgumentationFramework random_af(int n, double density,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  vafex::ArgumentationFramework af;
  std::vector<vafex::ArgumentId> ids;
  ids.reserve(n);
  for (int i = 0; i < n; ++i) {
    ids.push_back("a" + std::to_string(i));
    af.add_argument(ids.back());
  }
  for (const auto& from : ids) {
    for (const auto& to : ids) {
      if (vafex::uniform_unit(rng) < density) af.add_attack(from, to);
    }
  }
  return af;
}

void BM_grounded_extension(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  vafex::ArgumentationFramework af = random_af(n, 2.0 / n, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vafex::grounded_extension(af));
  }
  state.SetComplexityN(n);
}

void BM_enumerate_complete(benchmark::State& state) {
  vafex::ArgumentationFramework af =
      random_af(static_cast<int>(state.range(0)), 0.25, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vafex::enumerate_complete_extensions(af, state.range(0)));
  }
}

}  // namespace

BENCHMARK(BM_grounded_extension)->Arg(16)->Arg(64)->Arg(256)->Arg(1024)
    ->Complexity();
BENCHMARK(BM_enumerate_complete)->Arg(8)->Arg(12)->Arg(16);

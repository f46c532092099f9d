#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "vafex/agent.hpp"
#include "vafex/extraction.hpp"
#include "vafex/mountain_car.hpp"
#include "vafex/rng.hpp"
#include "vafex/takeaway.hpp"

namespace {

vafex::AAAgentModel grid_agent(int bins) {
  auto catalog = std::make_shared<const vafex::ArgumentCatalog>(
      vafex::generate_mc_catalog({bins, bins}));
  std::vector<vafex::ArgumentId> ids = catalog->ids();
  std::mt19937_64 rng(11);
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng() % i]);
  }
  return vafex::AAAgentModel(catalog,
                             vafex::ordering_to_values(vafex::Ordering{ids}), 0,
                             vafex::kNoPush);
}

// Per-decision latency of the deployed mountain car agent; the 20x20 case is
// the deployment configuration.
void BM_mc_select_action(benchmark::State& state) {
  vafex::AAAgentModel agent = grid_agent(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(23);
  vafex::StateVector sv{{"position", -0.5}, {"velocity", 0.0}};
  for (auto _ : state) {
    sv.set("position",
           vafex::uniform_in(rng, vafex::kMcPositionMin, vafex::kMcPositionMax));
    sv.set("velocity",
           vafex::uniform_in(rng, vafex::kMcVelocityMin, vafex::kMcVelocityMax));
    benchmark::DoNotOptimize(agent.select_action(sv));
  }
}

void BM_takeaway_joint_action(benchmark::State& state) {
  auto catalog = std::make_shared<const vafex::ArgumentCatalog>(
      vafex::generate_takeaway_catalog());
  vafex::TeamModel team = vafex::make_ground_truth_takeaway_team(catalog, 5);
  std::mt19937_64 rng(29);
  std::vector<vafex::StateVector> states =
      vafex::generate_takeaway_states(256, rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(team.select_joint_action(states[i++ % states.size()]));
  }
}

}  // namespace

BENCHMARK(BM_mc_select_action)->Arg(5)->Arg(20)->Arg(40);
BENCHMARK(BM_takeaway_joint_action);

#include <doctest.h>

#include <random>
#include <sstream>

#include "vafex/errors.hpp"
#include "vafex/evaluation.hpp"
#include "vafex/extraction.hpp"
#include "vafex/mountain_car.hpp"
#include "vafex/rng.hpp"

#include "test_support.hpp"

using namespace vafex;
using vafex_test::flag_catalog;
using vafex_test::flags_on;
using vafex_test::values_from_ranks;

namespace {

AAAgentModel random_grid_agent(std::shared_ptr<const ArgumentCatalog> catalog,
                               std::uint64_t seed) {
  std::vector<ArgumentId> ids = catalog->ids();
  std::mt19937_64 rng(seed);
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng() % i]);
  }
  return AAAgentModel(std::move(catalog), values_from_ranks(ids), 0, kNoPush);
}

}  // namespace

TEST_CASE("fidelity is 1 against a team's own trajectories") {
  auto catalog =
      std::make_shared<const ArgumentCatalog>(generate_mc_catalog({5, 5}));
  TeamModel team =
      TeamModel::decentralized({random_grid_agent(catalog, 71)});
  TrajectorySet log;
  run_mountain_car_episodes(policy_from_team(team), {}, {10, 9, 1}, &log);

  FidelityReport report = fidelity(team, log);
  CHECK(report.per_agent.at(0) == 1.0);
  CHECK(report.step_counts.at(0) ==
        static_cast<std::int64_t>(log.total_steps()));
}

TEST_CASE("fidelity is 0 when the model never matches the log") {
  auto catalog = flag_catalog({{"A", 0, "x"}, {"B", 0, "y"}}, 1);
  // Logged actions are always y; the agent always picks x (A applicable,
  // top-valued).
  AAAgentModel agent(catalog, values_from_ranks({"A", "B"}), 0, "x");
  Episode episode;
  for (int i = 0; i < 10; ++i) {
    episode.steps.push_back(TimeStep{flags_on(*catalog, {"A"}), {{0, "y"}}});
  }
  TrajectorySet set({episode}, {"A", "B"}, 1);
  CHECK(fidelity(TeamModel::decentralized({agent}), set).per_agent.at(0) == 0.0);
}

TEST_CASE("fidelity refuses empty inputs") {
  auto catalog = flag_catalog({{"A", 0, "x"}}, 1);
  TeamModel team = TeamModel::decentralized(
      {AAAgentModel(catalog, values_from_ranks({"A"}), 0, "x")});
  CHECK_THROWS_AS(fidelity(team, TrajectorySet({}, {"A"}, 1)), NoDataError);
}

TEST_CASE("fidelity is invariant under episode reordering") {
  auto catalog =
      std::make_shared<const ArgumentCatalog>(generate_mc_catalog({4, 4}));
  TeamModel team = TeamModel::decentralized({random_grid_agent(catalog, 5)});
  TrajectorySet log;
  run_mountain_car_episodes(scripted_mc_joint_policy(), {}, {8, 4, 1}, &log);

  std::vector<Episode> reordered(log.episodes().rbegin(),
                                 log.episodes().rend());
  TrajectorySet reversed_set(reordered, log.feature_names(), log.team_size());

  FidelityReport a = fidelity(team, log);
  FidelityReport b = fidelity(team, reversed_set);
  CHECK(a.per_agent == b.per_agent);
  CHECK(a.step_counts == b.step_counts);
}

TEST_CASE("policy grids sample cell centers") {
  auto catalog =
      std::make_shared<const ArgumentCatalog>(generate_mc_catalog({1, 1}));
  AAAgentModel agent(catalog, values_from_ranks(catalog->ids()), 0, kNoPush);
  PolicyGrid grid = policy_grid(agent, 1, 1);
  REQUIRE(grid.cells.size() == 1);
  CHECK(grid.cell(0, 0) ==
        agent.select_action({{"position", -0.3}, {"velocity", 0.0}}));

  SUBCASE("resolution and ranges are validated") {
    CHECK_THROWS_AS(policy_grid(agent, 0, 1), SchemaError);
    CHECK_THROWS_AS(policy_grid(agent, 1, 1, {-2.0, 0.6, -0.07, 0.07}),
                    SchemaError);
  }
}

TEST_CASE("a grid of the grid-catalog agent reads off cell winners") {
  auto catalog =
      std::make_shared<const ArgumentCatalog>(generate_mc_catalog({20, 20}));
  AAAgentModel agent = random_grid_agent(catalog, 1234);
  PolicyGrid grid = policy_grid(agent, 20, 20);

  // Cell (r, c) hosts the three arguments of position bin r, velocity bin c;
  // the grid must show the highest-valued one's action.
  for (int r = 0; r < 20; ++r) {
    for (int c = 0; c < 20; ++c) {
      std::string best_action;
      int best_value = 0;
      for (const char* action : {kPushLeft, kNoPush, kPushRight}) {
        char id[32];
        std::snprintf(id, sizeof(id), "p%02d_v%02d_%s", r, c, action);
        const int value = agent.values().at(id);
        if (best_action.empty() || value > best_value) {
          best_action = action;
          best_value = value;
        }
      }
      CHECK(grid.cell(r, c) == best_action);
    }
  }
}

TEST_CASE("grid csv and pgm renders are stable") {
  auto catalog =
      std::make_shared<const ArgumentCatalog>(generate_mc_catalog({2, 2}));
  AAAgentModel agent = random_grid_agent(catalog, 9);
  PolicyGrid grid = policy_grid(agent, 2, 3);

  std::string csv = policy_grid_csv(grid);
  CHECK(csv.rfind("position_bin,velocity_bin,action\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);

  std::istringstream in(csv);
  PolicyGrid parsed = policy_grid_from_csv(in);
  CHECK(parsed.rows == grid.rows);
  CHECK(parsed.cols == grid.cols);
  CHECK(parsed.cells == grid.cells);

  std::string pgm = policy_grid_pgm(grid, catalog->action_alphabet());
  CHECK(pgm.rfind("P2\n3 2\n255\n", 0) == 0);
}

TEST_CASE("grid diff counts mismatches symmetrically") {
  auto catalog =
      std::make_shared<const ArgumentCatalog>(generate_mc_catalog({3, 3}));
  AAAgentModel a = random_grid_agent(catalog, 100);
  AAAgentModel b = random_grid_agent(catalog, 200);
  PolicyGrid ga = policy_grid(a, 6, 6);
  PolicyGrid gb = policy_grid(b, 6, 6);

  CHECK(policy_grid_diff(ga, ga) == 0);
  CHECK(policy_grid_diff(ga, gb) == policy_grid_diff(gb, ga));

  PolicyGrid small = policy_grid(a, 2, 2);
  CHECK_THROWS_AS(policy_grid_diff(ga, small), SchemaError);
}

TEST_CASE("inspection lists primary arguments by descending value") {
  auto catalog = flag_catalog(
      {{"A", 0, "x"}, {"B", 0, "y"}, {"C", 0, "z"}, {"D", 1, "x"}}, 2);
  AAAgentModel agent(catalog, values_from_ranks({"D", "B", "A", "C"}), 0, "x");

  InspectionReport top2 = inspect_top_k(agent, 2);
  REQUIRE(top2.top.size() == 2);
  CHECK(top2.top[0].first == "B");
  CHECK(top2.top[1].first == "A");
  CHECK(top2.top[0].second > top2.top[1].second);
  // Values come straight from the assignment; D is not primary and is absent.
  CHECK(top2.top[0].second == agent.values().at("B"));

  InspectionReport all = inspect_top_k(agent, 10);
  CHECK(all.top.size() == 3);

  InspectionReport one = inspect_top_k(agent, 1);
  REQUIRE(one.top.size() == 1);
  CHECK(one.top[0].first == "B");

  CHECK_THROWS_AS(inspect_top_k(agent, 0), SchemaError);

  std::string text = inspection_text(top2);
  CHECK(text.find("agent 0") != std::string::npos);
  CHECK(text.find("B") != std::string::npos);
}

TEST_CASE("benchmarks keep step counts deterministic") {
  BenchmarkReport first =
      benchmark_mountain_car(scripted_mc_joint_policy(), {}, 5, 77);
  BenchmarkReport second =
      benchmark_mountain_car(scripted_mc_joint_policy(), {}, 5, 77);
  CHECK(first.stats.mean_steps == second.stats.mean_steps);
  CHECK(first.stats.success_rate == second.stats.success_rate);
  CHECK(first.decisions == second.decisions);
  CHECK(first.decisions > 0);
  CHECK(first.decision_mean_ms >= 0.0);
}

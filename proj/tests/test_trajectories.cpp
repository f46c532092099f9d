#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "vafex/errors.hpp"
#include "vafex/rng.hpp"
#include "vafex/trajectory.hpp"

using namespace vafex;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "vafex_traj_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

TrajectorySet random_set(std::mt19937_64& rng) {
  const int team = 1 + static_cast<int>(uniform_unit(rng) * 3);
  const std::vector<std::string> features = {"alpha", "beta", "gamma"};
  const std::vector<std::string> labels = {"go", "stay", "turn"};
  std::vector<Episode> episodes;
  const int n_episodes = 1 + static_cast<int>(uniform_unit(rng) * 4);
  for (int e = 0; e < n_episodes; ++e) {
    Episode episode;
    episode.id = e;
    const int n_steps = 1 + static_cast<int>(uniform_unit(rng) * 5);
    for (int s = 0; s < n_steps; ++s) {
      StateVector state;
      for (const auto& f : features) {
        state.set(f, uniform_in(rng, -10, 10));
      }
      std::map<AgentIndex, std::string> actions;
      for (int a = 0; a < team; ++a) {
        actions[a] = labels[rng() % labels.size()];
      }
      episode.steps.push_back(TimeStep{std::move(state), std::move(actions)});
    }
    episodes.push_back(std::move(episode));
  }
  return TrajectorySet(std::move(episodes), features, team);
}

}  // namespace

TEST_CASE("jsonl records map directly onto steps") {
  fs::path path = temp_file("two_rows.jsonl");
  write_text(path,
             R"({"episode":0,"position":-0.5,"velocity":0.0,"action_0":"no_push"})"
             "\n"
             R"({"episode":0,"position":-0.5,"velocity":0.0,"action_0":"no_push"})"
             "\n");
  LoadResult result = load_trajectories(path, TrajectoryFormat::kJsonl);
  CHECK(result.clean());
  REQUIRE(result.set.episodes().size() == 1);
  CHECK(result.set.episodes()[0].steps.size() == 2);
  CHECK(result.set.team_size() == 1);
  CHECK(result.set.feature_names() ==
        std::vector<std::string>{"position", "velocity"});
  CHECK(result.set.episodes()[0].steps[0].state.at("position") == -0.5);
  CHECK(result.set.episodes()[0].steps[0].actions.at(0) == "no_push");
}

TEST_CASE("labels outside the declared alphabet are schema errors") {
  fs::path path = temp_file("bad_label.jsonl");
  write_text(path,
             R"({"episode":0,"x":1.0,"action_0":"teleport"})"
             "\n");
  LoadOptions options;
  options.action_alphabet = std::vector<std::string>{"go", "stay"};
  LoadResult result = load_trajectories(path, TrajectoryFormat::kJsonl, options);
  REQUIRE(result.row_errors.size() == 1);
  CHECK(result.row_errors[0].line == 1);
  CHECK(result.row_errors[0].reason.find("teleport") != std::string::npos);
  CHECK(result.set.empty());
}

TEST_CASE("multi-agent rows carry one action per agent") {
  fs::path path = temp_file("three_agents.csv");
  write_text(path,
             "episode,step,action_0,action_1,action_2,dist\n"
             "0,0,tackle,mark_k1,mark_k2,3.5\n");
  LoadResult result = load_trajectories(path, TrajectoryFormat::kCsv);
  CHECK(result.clean());
  REQUIRE(result.set.total_steps() == 1);
  const TimeStep& step = result.set.episodes()[0].steps[0];
  CHECK(step.actions.size() == 3);
  CHECK(step.actions.at(2) == "mark_k2");
  CHECK(result.set.team_size() == 3);
}

TEST_CASE("write then load is the identity") {
  std::mt19937_64 rng(12021);
  for (int trial = 0; trial < 25; ++trial) {
    TrajectorySet set = random_set(rng);
    for (TrajectoryFormat format :
         {TrajectoryFormat::kJsonl, TrajectoryFormat::kCsv}) {
      fs::path path = temp_file(format == TrajectoryFormat::kJsonl
                                    ? "roundtrip.jsonl"
                                    : "roundtrip.csv");
      write_trajectories(set, path, format);
      LoadResult result = load_trajectories(path, format);
      CHECK(result.clean());
      CHECK(result.set == set);
    }
  }
}

TEST_CASE("empty sets write a valid schema-only file") {
  TrajectorySet empty({}, {"position", "velocity"}, 1);
  for (TrajectoryFormat format :
       {TrajectoryFormat::kJsonl, TrajectoryFormat::kCsv}) {
    fs::path path = temp_file(format == TrajectoryFormat::kJsonl
                                  ? "empty.jsonl"
                                  : "empty.csv");
    write_trajectories(empty, path, format);
    LoadResult result = load_trajectories(path, format);
    CHECK(result.set == empty);
    CHECK(result.warnings.size() == 1);  // empty-file warning
  }
}

TEST_CASE("iterate_pairs yields every step in order") {
  std::mt19937_64 rng(31);
  TrajectorySet set = random_set(rng);
  auto pairs = collect_pairs(set, 0);
  CHECK(pairs.size() == set.total_steps());

  std::size_t i = 0;
  for (const Episode& episode : set.episodes()) {
    for (const TimeStep& step : episode.steps) {
      CHECK(pairs[i].first == step.state);
      CHECK(pairs[i].second == step.actions.at(0));
      ++i;
    }
  }

  SUBCASE("empty set yields an empty stream") {
    TrajectorySet empty({}, {"alpha"}, 1);
    CHECK(collect_pairs(empty, 0).empty());
  }

  SUBCASE("agents outside the team are rejected") {
    CHECK_THROWS_AS(collect_pairs(set, set.team_size()), SchemaError);
  }
}

TEST_CASE("missing actions surface as data gaps") {
  Episode episode;
  episode.steps.push_back(TimeStep{StateVector{{"x", 1.0}}, {{0, "go"}}});
  episode.steps.push_back(TimeStep{StateVector{{"x", 2.0}}, {{1, "go"}}});
  TrajectorySet set({episode}, {"x"}, 2);
  CHECK_THROWS_AS(collect_pairs(set, 0), DataGapError);
}

TEST_CASE("no row is silently dropped") {
  fs::path path = temp_file("mixed.jsonl");
  write_text(path,
             R"({"episode":0,"x":1.0,"action_0":"go"})" "\n"
             "not json at all\n"
             R"({"episode":0,"action_0":"go"})" "\n"
             R"({"episode":0,"x":3.0,"action_0":"go"})" "\n");
  LoadResult result = load_trajectories(path, TrajectoryFormat::kJsonl);
  // 4 rows in = 2 steps out + 2 reported errors.
  CHECK(result.set.total_steps() == 2);
  REQUIRE(result.row_errors.size() == 2);
  CHECK(result.row_errors[0].line == 2);
  CHECK(result.row_errors[1].line == 3);
  CHECK(result.row_errors[1].reason.find("x") != std::string::npos);
}

TEST_CASE("csv headers are validated up front") {
  fs::path no_episode = temp_file("no_episode.csv");
  write_text(no_episode, "step,action_0,x\n0,go,1.0\n");
  CHECK_THROWS_AS(load_trajectories(no_episode, TrajectoryFormat::kCsv),
                  SchemaError);

  fs::path no_actions = temp_file("no_actions.csv");
  write_text(no_actions, "episode,step,x\n0,0,1.0\n");
  CHECK_THROWS_AS(load_trajectories(no_actions, TrajectoryFormat::kCsv),
                  SchemaError);
}

TEST_CASE("empty files load as empty sets with a warning") {
  fs::path path = temp_file("empty_input.jsonl");
  write_text(path, "");
  LoadResult result = load_trajectories(path, TrajectoryFormat::kJsonl);
  CHECK(result.set.empty());
  CHECK(result.warnings.size() == 1);

  CHECK_THROWS_AS(
      load_trajectories(temp_file("does_not_exist.jsonl"),
                        TrajectoryFormat::kJsonl),
      IoError);
}

TEST_CASE("episode boundaries come from the episode field") {
  fs::path path = temp_file("boundaries.jsonl");
  write_text(path,
             R"({"episode":3,"x":1.0,"action_0":"go"})" "\n"
             R"({"episode":3,"x":2.0,"action_0":"go"})" "\n"
             R"({"episode":7,"x":3.0,"action_0":"go"})" "\n");
  LoadResult result = load_trajectories(path, TrajectoryFormat::kJsonl);
  REQUIRE(result.set.episodes().size() == 2);
  CHECK(result.set.episodes()[0].id == 3);
  CHECK(result.set.episodes()[0].steps.size() == 2);
  CHECK(result.set.episodes()[1].id == 7);
}

TEST_CASE("format helpers") {
  CHECK(trajectory_format_from_name("jsonl") == TrajectoryFormat::kJsonl);
  CHECK(trajectory_format_from_name("csv") == TrajectoryFormat::kCsv);
  CHECK_THROWS_AS(trajectory_format_from_name("xml"), SchemaError);
  CHECK(trajectory_format_from_path("runs/a.csv") == TrajectoryFormat::kCsv);
  CHECK(trajectory_format_from_path("runs/a.jsonl") == TrajectoryFormat::kJsonl);
}

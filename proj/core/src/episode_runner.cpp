#include "vafex/episode_runner.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <utility>
#include <vector>

#include "vafex/errors.hpp"
#include "vafex/rng.hpp"

namespace vafex {

JointPolicy policy_from_team(const TeamModel& team) {
  return [&team](const StateVector& state) {
    return team.select_joint_action(state);
  };
}

JointPolicy single_agent_policy(
    std::function<std::string(const StateVector&)> fn) {
  return [fn = std::move(fn)](const StateVector& state) {
    return std::map<AgentIndex, std::string>{{0, fn(state)}};
  };
}

JointPolicy scripted_mc_joint_policy() {
  return single_agent_policy([](const StateVector& state) {
    return scripted_mc_policy(
        MountainCarState{state.at("position"), state.at("velocity")});
  });
}

namespace {

struct EpisodeOutcome {
  Episode episode;
  int steps = 0;
  bool success = false;
  double wall_s = 0;
};

// Deterministic per-episode work function, fanned out over threads and merged
// back in index order so the thread count never changes any output.
template <typename RunOne>
std::vector<EpisodeOutcome> run_batch(const RunOptions& options, bool keep_log,
                                      const RunOne& run_one) {
  if (options.episodes < 1) throw SchemaError("episodes must be at least 1");
  const int threads = std::max(1, options.threads);

  std::vector<EpisodeOutcome> outcomes(options.episodes);
  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      outcomes[k] = run_one(k, keep_log);
      const auto t1 = std::chrono::steady_clock::now();
      outcomes[k].wall_s = std::chrono::duration<double>(t1 - t0).count();
    }
  };

  if (threads == 1 || options.episodes == 1) {
    work(0, options.episodes);
  } else {
    const int chunk = (options.episodes + threads - 1) / threads;
    std::vector<std::future<void>> futures;
    for (int begin = 0; begin < options.episodes; begin += chunk) {
      const int end = std::min(begin + chunk, options.episodes);
      futures.push_back(
          std::async(std::launch::async, [&work, begin, end] { work(begin, end); }));
    }
    for (auto& f : futures) f.get();
  }
  return outcomes;
}

EpisodeStats summarize(const std::vector<EpisodeOutcome>& outcomes) {
  EpisodeStats stats;
  stats.episodes = static_cast<int>(outcomes.size());
  if (outcomes.empty()) return stats;

  double step_sum = 0, wall_sum = 0, successes = 0;
  for (const EpisodeOutcome& o : outcomes) {
    step_sum += o.steps;
    wall_sum += o.wall_s;
    successes += o.success ? 1 : 0;
  }
  stats.mean_steps = step_sum / stats.episodes;
  stats.mean_wall_time_s = wall_sum / stats.episodes;
  stats.success_rate = successes / stats.episodes;

  double step_var = 0, wall_var = 0;
  for (const EpisodeOutcome& o : outcomes) {
    step_var += (o.steps - stats.mean_steps) * (o.steps - stats.mean_steps);
    wall_var += (o.wall_s - stats.mean_wall_time_s) *
                (o.wall_s - stats.mean_wall_time_s);
  }
  stats.std_steps = std::sqrt(step_var / stats.episodes);
  stats.std_wall_time_s = std::sqrt(wall_var / stats.episodes);
  return stats;
}

TrajectorySet collect_log(std::vector<EpisodeOutcome>&& outcomes,
                          std::vector<std::string> feature_names,
                          int team_size) {
  std::vector<Episode> episodes;
  episodes.reserve(outcomes.size());
  for (EpisodeOutcome& o : outcomes) episodes.push_back(std::move(o.episode));
  return TrajectorySet(std::move(episodes), std::move(feature_names), team_size);
}

const std::string& action_for_agent_0(
    const std::map<AgentIndex, std::string>& actions) {
  auto it = actions.find(0);
  if (it == actions.end()) {
    throw SchemaError("policy returned no action for agent 0");
  }
  return it->second;
}

}  // namespace

EpisodeStats run_mountain_car_episodes(const JointPolicy& policy,
                                       const MountainCarParams& params,
                                       const RunOptions& options,
                                       TrajectorySet* log) {
  auto run_one = [&](int k, bool keep_log) {
    EpisodeOutcome outcome;
    outcome.episode.id = k;
    std::mt19937_64 rng(derive_seed(options.seed, k));
    MountainCarState state = mc_reset(rng);
    for (int step = 0; step < params.max_steps; ++step) {
      StateVector sv = mc_state_vector(state);
      std::map<AgentIndex, std::string> actions = policy(sv);
      const std::string& action = action_for_agent_0(actions);
      state = mc_step(state, action, params);
      if (keep_log) {
        outcome.episode.steps.push_back(
            TimeStep{std::move(sv), std::move(actions)});
      }
      outcome.steps = step + 1;
      if (mc_done(state, params)) {
        outcome.success = true;
        break;
      }
    }
    return outcome;
  };

  std::vector<EpisodeOutcome> outcomes =
      run_batch(options, log != nullptr, run_one);
  EpisodeStats stats = summarize(outcomes);
  if (log) {
    *log = collect_log(std::move(outcomes), {"position", "velocity"}, 1);
  }
  return stats;
}

EpisodeStats run_takeaway_replay(const JointPolicy& policy,
                                 const TakeawayParams& params,
                                 const RunOptions& options,
                                 TrajectorySet* log) {
  if (params.steps_per_episode < 1) {
    throw SchemaError("steps_per_episode must be at least 1");
  }
  auto run_one = [&](int k, bool keep_log) {
    EpisodeOutcome outcome;
    outcome.episode.id = k;
    std::mt19937_64 rng(derive_seed(options.seed, k));
    for (int step = 0; step < params.steps_per_episode; ++step) {
      StateVector sv = sample_takeaway_state(rng, params);
      std::map<AgentIndex, std::string> actions = policy(sv);
      if (keep_log) {
        outcome.episode.steps.push_back(
            TimeStep{std::move(sv), std::move(actions)});
      }
    }
    outcome.steps = params.steps_per_episode;
    outcome.success = true;
    return outcome;
  };

  std::vector<EpisodeOutcome> outcomes =
      run_batch(options, log != nullptr, run_one);
  EpisodeStats stats = summarize(outcomes);
  if (log) {
    std::mt19937_64 rng(derive_seed(options.seed, 0));
    const StateVector sample = sample_takeaway_state(rng, params);
    std::vector<std::string> features;
    for (const auto& [name, value] : sample.items()) {
      features.push_back(name);
    }
    *log = collect_log(std::move(outcomes), std::move(features), params.takers);
  }
  return stats;
}

}  // namespace vafex

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "vafex/mountain_car.hpp"
#include "vafex/takeaway.hpp"
#include "vafex/team.hpp"
#include "vafex/trajectory.hpp"

namespace vafex {

/// Aggregate over a batch of episodes. Wall times are in seconds; step counts
/// and success rate are deterministic for a fixed seed, timings are not.
struct EpisodeStats {
  int episodes = 0;
  double mean_steps = 0;
  double std_steps = 0;
  double mean_wall_time_s = 0;
  double std_wall_time_s = 0;
  double success_rate = 0;
};

/// Full joint decision for one state.
using JointPolicy =
    std::function<std::map<AgentIndex, std::string>(const StateVector&)>;

JointPolicy policy_from_team(const TeamModel& team);
/// Wraps a single-agent decision function as agent 0 of a 1-agent team.
JointPolicy single_agent_policy(std::function<std::string(const StateVector&)> fn);
/// The scripted momentum baseline as a JointPolicy.
JointPolicy scripted_mc_joint_policy();

struct RunOptions {
  int episodes = 1;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Runs seeded Mountain Car episodes to the goal or the step cap. Episode k
/// draws its start from a stream derived from (seed, k), so results do not
/// depend on the thread count. Optionally logs every (state, action) step.
EpisodeStats run_mountain_car_episodes(const JointPolicy& policy,
                                       const MountainCarParams& params,
                                       const RunOptions& options,
                                       TrajectorySet* log = nullptr);

/// Replays freshly sampled feature states through the team; there is no
/// physics loop, an "episode" is steps_per_episode sampled states. Success
/// rate is 1 by construction.
EpisodeStats run_takeaway_replay(const JointPolicy& policy,
                                 const TakeawayParams& params,
                                 const RunOptions& options,
                                 TrajectorySet* log = nullptr);

}  // namespace vafex

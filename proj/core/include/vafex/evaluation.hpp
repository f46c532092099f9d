#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vafex/episode_runner.hpp"
#include "vafex/team.hpp"
#include "vafex/trajectory.hpp"

namespace vafex {

/// Per-agent agreement between a team's selections and logged actions:
/// 1 - mean 0-1 loss, every logged step counted once.
struct FidelityReport {
  std::map<AgentIndex, double> per_agent;
  std::map<AgentIndex, std::int64_t> step_counts;

  nlohmann::json to_json() const;
};

/// Throws NoDataError on an empty trajectory set rather than reporting 0.
FidelityReport fidelity(const TeamModel& team, const TrajectorySet& trajectories);

struct GridRanges {
  double pos_lo = -1.2;
  double pos_hi = 0.6;
  double vel_lo = -0.07;
  double vel_hi = 0.07;
};

/// Action labels sampled at cell-center states over a position x velocity
/// grid; rows index position bins, columns velocity bins.
struct PolicyGrid {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> cells;  // row-major
  GridRanges ranges;

  const std::string& cell(int row, int col) const;
};

PolicyGrid policy_grid(const AAAgentModel& agent, int rows, int cols,
                       const GridRanges& ranges = {});

/// Header `position_bin,velocity_bin,action`, one row per cell.
std::string policy_grid_csv(const PolicyGrid& grid);
PolicyGrid policy_grid_from_csv(std::istream& in);

/// ASCII PGM render; the action alphabet maps to evenly spaced gray levels in
/// alphabetical order.
std::string policy_grid_pgm(const PolicyGrid& grid,
                            const std::vector<std::string>& action_alphabet);

/// Number of mismatching cells; symmetric. Grids must have equal shape.
int policy_grid_diff(const PolicyGrid& a, const PolicyGrid& b);

/// The agent's top-k primary arguments by descending value.
struct InspectionReport {
  AgentIndex agent = 0;
  std::vector<std::pair<ArgumentId, int>> top;

  nlohmann::json to_json() const;
};

InspectionReport inspect_top_k(const AAAgentModel& agent, int k);
std::string inspection_text(const InspectionReport& report);

/// Episode stats plus per-decision latency, measured after 10 warm-up
/// episodes that are excluded from every statistic.
struct BenchmarkReport {
  EpisodeStats stats;
  std::int64_t decisions = 0;
  double decision_mean_ms = 0;
  double decision_std_ms = 0;
};

BenchmarkReport benchmark_mountain_car(const JointPolicy& policy,
                                       const MountainCarParams& params,
                                       int episodes, std::uint64_t seed);
BenchmarkReport benchmark_takeaway(const JointPolicy& policy,
                                   const TakeawayParams& params, int episodes,
                                   std::uint64_t seed);

}  // namespace vafex

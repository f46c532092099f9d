#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "vafex/catalog.hpp"
#include "vafex/state.hpp"
#include "vafex/team.hpp"

namespace vafex {

/// Synthetic takeaway-style feature domain: N takers try to win the ball
/// from N+1 keepers. There is no match engine; states are geometrically
/// consistent feature snapshots sampled from random player positions, enough
/// to exercise multi-agent argument interaction.
///
/// Taker T_i maps to agent index i-1. Feature names (1-based player indices):
///   dist_ball_t<i>    distance from taker i to the ball holder
///   dist_t<i>_k<p>    distance from taker i to keeper p
///   angle_t<i>_k<p>   angle at the ball holder between taker i and keeper p,
///                     degrees in [0, 180]; 180 for the holder itself
///   open_k<p>         openness in [0, 1]; 0 for the holder
///   mindist_k<p>      distance from keeper p to the nearest taker
struct TakeawayParams {
  int takers = 3;
  int keepers = 4;
  double field_width = 40.0;
  double field_height = 40.0;
  /// A keeper counts as open when no taker sits within open_threshold * 90
  /// degrees of its passing lane.
  double open_threshold = 0.7;
  /// A keeper counts as far when every taker is at least this many field
  /// units away.
  double far_threshold = 15.0;
  /// States replayed per episode when running the team.
  int steps_per_episode = 20;
};

/// The five argument templates instantiated for every taker: TackleBall_i
/// plus OpenKeeper/FarKeeper/MinAngle/MinDist per keeper. 3 takers x 4
/// keepers yields 3 * (1 + 4*4) = 51 arguments.
ArgumentCatalog generate_takeaway_catalog(const TakeawayParams& params = {});

/// One geometrically consistent feature state.
StateVector sample_takeaway_state(std::mt19937_64& rng,
                                  const TakeawayParams& params = {});

std::vector<StateVector> generate_takeaway_states(
    int count, std::mt19937_64& rng, const TakeawayParams& params = {});

/// Hand-built decentralized team used as the "original model": every agent
/// ranks its own TackleBall argument highest, its remaining primary arguments
/// in a seed-shuffled order, and all cross-agent arguments below them.
/// Default action is tackle.
TeamModel make_ground_truth_takeaway_team(
    std::shared_ptr<const ArgumentCatalog> catalog, std::uint64_t seed);

}  // namespace vafex

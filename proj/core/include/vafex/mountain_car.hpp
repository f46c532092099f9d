#pragma once

#include <random>
#include <string>

#include "vafex/catalog.hpp"
#include "vafex/state.hpp"

namespace vafex {

inline constexpr double kMcPositionMin = -1.2;
inline constexpr double kMcPositionMax = 0.6;
inline constexpr double kMcVelocityMin = -0.07;
inline constexpr double kMcVelocityMax = 0.07;

inline constexpr const char* kPushLeft = "push_left";
inline constexpr const char* kNoPush = "no_push";
inline constexpr const char* kPushRight = "push_right";

struct MountainCarState {
  double position = 0;
  double velocity = 0;
};

struct MountainCarParams {
  double force = 0.001;
  double gravity_scale = 0.0025;
  double goal_position = 0.5;
  int max_steps = 999;
};

/// Deterministic dynamics update:
///   v' = clamp(v + dir * force - gravity_scale * cos(3 * pos))
///   pos' = clamp(pos + v'), with v' zeroed at the left wall.
MountainCarState mc_step(const MountainCarState& state,
                         const std::string& action,
                         const MountainCarParams& params = {});

bool mc_done(const MountainCarState& state, const MountainCarParams& params = {});

/// Fresh start: position uniform in [-0.6, -0.4], velocity 0.
MountainCarState mc_reset(std::mt19937_64& rng);

/// Momentum baseline standing in for a learned original model: push in the
/// direction of motion, kick-start leftwards from rest.
std::string scripted_mc_policy(const MountainCarState& state);

StateVector mc_state_vector(const MountainCarState& state);

struct GridSpec {
  int position_bins = 20;
  int velocity_bins = 20;
};

/// Brute-force catalog: one argument per (position bin, velocity bin, action)
/// triple, conditions half-open boxes except the top bins, which are closed
/// so the bins partition the full state space. 20x20 yields 1200 arguments.
ArgumentCatalog generate_mc_catalog(const GridSpec& grid = {});

}  // namespace vafex

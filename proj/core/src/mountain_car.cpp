#include "vafex/mountain_car.hpp"

#include <algorithm>
#include <cmath>

#include "vafex/errors.hpp"
#include "vafex/rng.hpp"

namespace vafex {

namespace {

int action_direction(const std::string& action) {
  if (action == kPushLeft) return -1;
  if (action == kNoPush) return 0;
  if (action == kPushRight) return 1;
  throw SchemaError("invalid mountain car action: " + action);
}

std::string pad_index(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

int digits(int n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

}  // namespace

MountainCarState mc_step(const MountainCarState& state,
                         const std::string& action,
                         const MountainCarParams& params) {
  const int dir = action_direction(action);
  MountainCarState next;
  next.velocity = state.velocity + dir * params.force -
                  params.gravity_scale * std::cos(3.0 * state.position);
  next.velocity = std::clamp(next.velocity, kMcVelocityMin, kMcVelocityMax);
  next.position = std::clamp(state.position + next.velocity, kMcPositionMin,
                             kMcPositionMax);
  if (next.position == kMcPositionMin && next.velocity < 0) {
    next.velocity = 0;
  }
  return next;
}

bool mc_done(const MountainCarState& state, const MountainCarParams& params) {
  return state.position >= params.goal_position;
}

MountainCarState mc_reset(std::mt19937_64& rng) {
  return MountainCarState{uniform_in(rng, -0.6, -0.4), 0.0};
}

std::string scripted_mc_policy(const MountainCarState& state) {
  if (state.velocity > 0) return kPushRight;
  return kPushLeft;
}

StateVector mc_state_vector(const MountainCarState& state) {
  return StateVector{{"position", state.position}, {"velocity", state.velocity}};
}

ArgumentCatalog generate_mc_catalog(const GridSpec& grid) {
  if (grid.position_bins < 1 || grid.velocity_bins < 1) {
    throw SchemaError("grid bins must be at least 1");
  }
  const double pos_width =
      (kMcPositionMax - kMcPositionMin) / grid.position_bins;
  const double vel_width =
      (kMcVelocityMax - kMcVelocityMin) / grid.velocity_bins;
  const int pos_digits = digits(grid.position_bins - 1);
  const int vel_digits = digits(grid.velocity_bins - 1);
  const std::vector<std::string> actions = {kPushLeft, kNoPush, kPushRight};

  std::vector<ActionArgument> arguments;
  arguments.reserve(static_cast<std::size_t>(grid.position_bins) *
                    grid.velocity_bins * actions.size());
  for (int p = 0; p < grid.position_bins; ++p) {
    for (int v = 0; v < grid.velocity_bins; ++v) {
      // Top bins are closed and end exactly at the domain maximum so the
      // cells partition the whole state space, boundary included.
      const bool last_p = p == grid.position_bins - 1;
      const bool last_v = v == grid.velocity_bins - 1;
      ConditionSpec condition;
      condition.kind = "interval2d";
      condition.params["pos_lo"] = kMcPositionMin + pos_width * p;
      condition.params["pos_hi"] =
          last_p ? kMcPositionMax : kMcPositionMin + pos_width * (p + 1);
      condition.params["vel_lo"] = kMcVelocityMin + vel_width * v;
      condition.params["vel_hi"] =
          last_v ? kMcVelocityMax : kMcVelocityMin + vel_width * (v + 1);
      if (last_p) condition.params["pos_closed_hi"] = 1.0;
      if (last_v) condition.params["vel_closed_hi"] = 1.0;
      for (const std::string& action : actions) {
        ActionArgument arg;
        arg.id = "p" + pad_index(p, pos_digits) + "_v" +
                 pad_index(v, vel_digits) + "_" + action;
        arg.target = 0;
        arg.action = action;
        arg.condition = condition;
        arguments.push_back(std::move(arg));
      }
    }
  }
  return ArgumentCatalog(std::move(arguments), actions, 1);
}

}  // namespace vafex

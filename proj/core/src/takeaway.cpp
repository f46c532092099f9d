#include "vafex/takeaway.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vafex/errors.hpp"
#include "vafex/extraction.hpp"
#include "vafex/rng.hpp"

namespace vafex {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string tackle_action() { return "tackle"; }
std::string mark_action(int keeper) { return "mark_k" + std::to_string(keeper); }

struct Point {
  double x = 0;
  double y = 0;
};

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Angle at `vertex` between the rays to `a` and `b`, in degrees. Degenerate
// rays count as fully blocked (180).
double angle_at(const Point& vertex, const Point& a, const Point& b) {
  const double ax = a.x - vertex.x;
  const double ay = a.y - vertex.y;
  const double bx = b.x - vertex.x;
  const double by = b.y - vertex.y;
  const double na = std::hypot(ax, ay);
  const double nb = std::hypot(bx, by);
  if (na == 0 || nb == 0) return 180.0;
  double c = (ax * bx + ay * by) / (na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

}  // namespace

ArgumentCatalog generate_takeaway_catalog(const TakeawayParams& params) {
  if (params.takers < 1 || params.keepers < 1) {
    throw SchemaError("takeaway needs at least one taker and one keeper");
  }
  std::vector<std::string> actions = {tackle_action()};
  for (int p = 1; p <= params.keepers; ++p) actions.push_back(mark_action(p));

  std::vector<ActionArgument> arguments;
  const double takers = params.takers;
  const double keepers = params.keepers;
  for (int i = 1; i <= params.takers; ++i) {
    const AgentIndex target = i - 1;
    const double taker = i;
    {
      ActionArgument arg;
      arg.id = "TackleBall_" + std::to_string(i);
      arg.target = target;
      arg.action = tackle_action();
      arg.condition = {"closest_to_ball", {{"taker", taker}, {"takers", takers}}};
      arguments.push_back(std::move(arg));
    }
    for (int p = 1; p <= params.keepers; ++p) {
      const double keeper = p;
      const std::string suffix =
          "_" + std::to_string(i) + "_" + std::to_string(p);
      arguments.push_back({"OpenKeeper" + suffix, target, mark_action(p),
                           {"keeper_open",
                            {{"keeper", keeper},
                             {"min_openness", params.open_threshold}}}});
      arguments.push_back({"FarKeeper" + suffix, target, mark_action(p),
                           {"keeper_far",
                            {{"keeper", keeper},
                             {"min_distance", params.far_threshold}}}});
      arguments.push_back({"MinAngle" + suffix, target, mark_action(p),
                           {"min_angle_keeper",
                            {{"taker", taker},
                             {"keeper", keeper},
                             {"keepers", keepers}}}});
      arguments.push_back({"MinDist" + suffix, target, mark_action(p),
                           {"closest_taker_to_keeper",
                            {{"taker", taker},
                             {"keeper", keeper},
                             {"takers", takers}}}});
    }
  }
  return ArgumentCatalog(std::move(arguments), std::move(actions),
                         params.takers);
}

StateVector sample_takeaway_state(std::mt19937_64& rng,
                                  const TakeawayParams& params) {
  std::vector<Point> takers(params.takers);
  std::vector<Point> keepers(params.keepers);
  for (Point& t : takers) {
    t = {uniform_in(rng, 0, params.field_width),
         uniform_in(rng, 0, params.field_height)};
  }
  for (Point& k : keepers) {
    k = {uniform_in(rng, 0, params.field_width),
         uniform_in(rng, 0, params.field_height)};
  }
  int holder = std::min(static_cast<int>(uniform_unit(rng) * params.keepers),
                        params.keepers - 1);
  const Point& ball = keepers[holder];

  StateVector state;
  for (int i = 0; i < params.takers; ++i) {
    state.set("dist_ball_t" + std::to_string(i + 1),
              distance(takers[i], ball));
  }
  for (int p = 0; p < params.keepers; ++p) {
    const std::string kp = "k" + std::to_string(p + 1);
    double min_dist = std::numeric_limits<double>::infinity();
    double min_angle = 180.0;
    for (int i = 0; i < params.takers; ++i) {
      const double d = distance(takers[i], keepers[p]);
      const double a = p == holder ? 180.0 : angle_at(ball, takers[i], keepers[p]);
      state.set("dist_t" + std::to_string(i + 1) + "_" + kp, d);
      state.set("angle_t" + std::to_string(i + 1) + "_" + kp, a);
      min_dist = std::min(min_dist, d);
      min_angle = std::min(min_angle, a);
    }
    state.set("mindist_" + kp, min_dist);
    state.set("open_" + kp,
              p == holder ? 0.0 : std::clamp(min_angle / 90.0, 0.0, 1.0));
  }
  return state;
}

std::vector<StateVector> generate_takeaway_states(int count,
                                                  std::mt19937_64& rng,
                                                  const TakeawayParams& params) {
  if (count < 0) throw SchemaError("state count must be non-negative");
  std::vector<StateVector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample_takeaway_state(rng, params));
  return out;
}

namespace {

// Deterministic Fisher-Yates; std::shuffle would not be stable across
// standard libraries.
template <typename T>
void shuffle_stable(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng() % i]);
  }
}

}  // namespace

TeamModel make_ground_truth_takeaway_team(
    std::shared_ptr<const ArgumentCatalog> catalog, std::uint64_t seed) {
  if (!catalog) throw InvariantError("ground truth team requires a catalog");
  std::vector<AAAgentModel> members;
  for (AgentIndex agent = 0; agent < catalog->team_size(); ++agent) {
    const std::string tackle_id = "TackleBall_" + std::to_string(agent + 1);
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(agent)));

    // Primary arguments grouped by recommended action, the tackle argument
    // on top. Keeping each group contiguous makes the agent's choice a pure
    // group-precedence decision, the structure the trajectory data can
    // actually identify.
    std::map<std::string, std::vector<ArgumentId>> groups;
    std::vector<ArgumentId> others;
    for (const auto& arg : catalog->arguments()) {
      if (arg.id == tackle_id) continue;
      if (arg.target == agent) {
        groups[arg.action].push_back(arg.id);
      } else {
        others.push_back(arg.id);
      }
    }
    std::vector<std::string> group_order;
    for (const auto& [action, ids] : groups) group_order.push_back(action);
    shuffle_stable(group_order, rng);

    Ordering ordering;
    ordering.ranked.push_back(tackle_id);
    for (const std::string& action : group_order) {
      std::vector<ArgumentId>& ids = groups[action];
      shuffle_stable(ids, rng);
      ordering.ranked.insert(ordering.ranked.end(), ids.begin(), ids.end());
    }
    ordering.ranked.insert(ordering.ranked.end(), others.begin(), others.end());
    members.emplace_back(catalog, ordering_to_values(ordering), agent,
                         tackle_action());
  }
  return TeamModel::decentralized(std::move(members));
}

}  // namespace vafex

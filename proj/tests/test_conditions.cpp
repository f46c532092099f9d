#include <doctest.h>

#include "vafex/conditions.hpp"
#include "vafex/errors.hpp"

using namespace vafex;

TEST_CASE("interval2d matches the first grid cell") {
  // Bottom-left 20x20 cell of the position/velocity grid.
  ConditionSpec spec{"interval2d",
                     {{"pos_lo", -1.2},
                      {"pos_hi", -1.11},
                      {"vel_lo", -0.07},
                      {"vel_hi", -0.063}}};

  CHECK(evaluate_condition(spec,
                           {{"position", -1.15}, {"velocity", -0.065}}));
  CHECK_FALSE(
      evaluate_condition(spec, {{"position", 0.0}, {"velocity", 0.0}}));

  SUBCASE("upper bounds are half-open unless marked closed") {
    CHECK_FALSE(
        evaluate_condition(spec, {{"position", -1.11}, {"velocity", -0.065}}));
    ConditionSpec closed = spec;
    closed.params["pos_closed_hi"] = 1.0;
    CHECK(evaluate_condition(closed,
                             {{"position", -1.11}, {"velocity", -0.065}}));
  }

  SUBCASE("missing features are reported by name") {
    try {
      evaluate_condition(spec, {{"position", -1.15}});
      FAIL("expected MissingFeatureError");
    } catch (const MissingFeatureError& e) {
      CHECK(e.feature() == "velocity");
    }
  }
}

TEST_CASE("unknown condition kinds are rejected") {
  CHECK_THROWS_AS(evaluate_condition({"no_such_kind", {}}, {}),
                  UnknownConditionError);
  CHECK_FALSE(ConditionRegistry::builtin().contains("no_such_kind"));
}

TEST_CASE("parameter schemas are validated at compile time") {
  CHECK_THROWS_AS(ConditionRegistry::builtin().compile({"interval2d", {}}),
                  SchemaError);
  CHECK_THROWS_AS(ConditionRegistry::builtin().compile(
                      {"feature_at_least", {{"feature", 1.0}, {"min", 0.0}}}),
                  SchemaError);
  CHECK_THROWS_AS(ConditionRegistry::builtin().compile(
                      {"closest_to_ball", {{"taker", 0.0}, {"takers", 3.0}}}),
                  SchemaError);  // indices are 1-based
}

TEST_CASE("feature_at_least thresholds") {
  ConditionSpec spec{"feature_at_least", {{"feature", std::string("x")}, {"min", 2.0}}};
  CHECK(evaluate_condition(spec, {{"x", 2.0}}));
  CHECK_FALSE(evaluate_condition(spec, {{"x", 1.99}}));
}

TEST_CASE("takeaway predicates pick unique argmins with index ties") {
  StateVector state{{"dist_ball_t1", 5.0},
                    {"dist_ball_t2", 5.0},
                    {"dist_ball_t3", 7.0},
                    {"angle_t1_k1", 30.0},
                    {"angle_t1_k2", 10.0},
                    {"dist_t1_k2", 4.0},
                    {"dist_t2_k2", 3.0},
                    {"open_k1", 0.75},
                    {"mindist_k1", 16.0}};

  // Tie between takers 1 and 2 resolves to the lower index.
  CHECK(evaluate_condition(
      {"closest_to_ball", {{"taker", 1.0}, {"takers", 3.0}}}, state));
  CHECK_FALSE(evaluate_condition(
      {"closest_to_ball", {{"taker", 2.0}, {"takers", 3.0}}}, state));

  CHECK(evaluate_condition({"min_angle_keeper",
                            {{"taker", 1.0}, {"keeper", 2.0}, {"keepers", 2.0}}},
                           state));
  CHECK_FALSE(
      evaluate_condition({"min_angle_keeper",
                          {{"taker", 1.0}, {"keeper", 1.0}, {"keepers", 2.0}}},
                         state));

  CHECK(evaluate_condition({"closest_taker_to_keeper",
                            {{"taker", 2.0}, {"keeper", 2.0}, {"takers", 2.0}}},
                           state));

  CHECK(evaluate_condition(
      {"keeper_open", {{"keeper", 1.0}, {"min_openness", 0.7}}}, state));
  CHECK(evaluate_condition(
      {"keeper_far", {{"keeper", 1.0}, {"min_distance", 15.0}}}, state));
  CHECK_FALSE(evaluate_condition(
      {"keeper_far", {{"keeper", 1.0}, {"min_distance", 17.0}}}, state));
}

TEST_CASE("condition specs round-trip through json") {
  ConditionSpec spec{"interval2d",
                     {{"pos_lo", -1.2},
                      {"pos_hi", -1.11},
                      {"vel_lo", -0.07},
                      {"vel_hi", -0.063},
                      {"x_feature", std::string("position")}}};
  CHECK(condition_from_json(condition_to_json(spec)) == spec);
}

TEST_CASE("custom kinds can be registered") {
  ConditionRegistry registry = ConditionRegistry::with_builtins();
  registry.register_kind("always", [](const ParamMap&) {
    return [](const StateVector&) { return true; };
  });
  CHECK(registry.evaluate({"always", {}}, {}));
}

#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "vafex/state.hpp"

namespace vafex {

using ParamValue = std::variant<double, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

/// A condition is data, not code: a registered predicate family name plus its
/// parameters. This keeps argument catalogs serializable and extraction runs
/// reproducible.
struct ConditionSpec {
  std::string kind;
  ParamMap params;

  bool operator==(const ConditionSpec&) const = default;
};

nlohmann::json params_to_json(const ParamMap& params);
ParamMap params_from_json(const nlohmann::json& j);
nlohmann::json condition_to_json(const ConditionSpec& spec);
ConditionSpec condition_from_json(const nlohmann::json& j);

double require_number(const ParamMap& params, const std::string& key);
std::string require_string(const ParamMap& params, const std::string& key);
double number_or(const ParamMap& params, const std::string& key, double fallback);
std::string string_or(const ParamMap& params, const std::string& key,
                      std::string fallback);

/// A condition compiled against its parameters once; evaluation is then a
/// pure function of the state.
using CompiledCondition = std::function<bool(const StateVector&)>;

/// Registry of predicate families. `compile` validates parameters up front so
/// per-state evaluation does no param parsing.
class ConditionRegistry {
 public:
  using Factory = std::function<CompiledCondition(const ParamMap&)>;

  ConditionRegistry() = default;

  /// Registry preloaded with the built-in kinds:
  ///   interval2d              half-open box over two features
  ///   feature_at_least        single-feature threshold
  ///   closest_to_ball         taker i is nearest to the ball holder
  ///   keeper_open             keeper p's openness clears a threshold
  ///   keeper_far              keeper p is far from every taker
  ///   min_angle_keeper        keeper p has taker i's smallest pass angle
  ///   closest_taker_to_keeper taker i is nearest to keeper p
  static ConditionRegistry with_builtins();

  /// Shared immutable instance of with_builtins().
  static const ConditionRegistry& builtin();

  void register_kind(std::string kind, Factory factory);
  bool contains(std::string_view kind) const;

  CompiledCondition compile(const ConditionSpec& spec) const;
  bool evaluate(const ConditionSpec& spec, const StateVector& state) const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

/// True iff the condition holds in `state`.
bool evaluate_condition(const ConditionSpec& spec, const StateVector& state,
                        const ConditionRegistry& registry = ConditionRegistry::builtin());

}  // namespace vafex

#include "vafex/conditions.hpp"

#include <cmath>
#include <utility>

#include "vafex/errors.hpp"

namespace vafex {

nlohmann::json params_to_json(const ParamMap& params) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : params) {
    if (std::holds_alternative<double>(value)) {
      j[key] = std::get<double>(value);
    } else {
      j[key] = std::get<std::string>(value);
    }
  }
  return j;
}

ParamMap params_from_json(const nlohmann::json& j) {
  ParamMap params;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_number()) {
      params[it.key()] = it.value().get<double>();
    } else if (it.value().is_string()) {
      params[it.key()] = it.value().get<std::string>();
    } else {
      throw SchemaError("condition parameter '" + it.key() +
                        "' must be a number or string");
    }
  }
  return params;
}

nlohmann::json condition_to_json(const ConditionSpec& spec) {
  return {{"kind", spec.kind}, {"params", params_to_json(spec.params)}};
}

ConditionSpec condition_from_json(const nlohmann::json& j) {
  ConditionSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (j.contains("params")) spec.params = params_from_json(j.at("params"));
  return spec;
}

double require_number(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || !std::holds_alternative<double>(it->second)) {
    throw SchemaError("condition requires numeric parameter '" + key + "'");
  }
  return std::get<double>(it->second);
}

std::string require_string(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || !std::holds_alternative<std::string>(it->second)) {
    throw SchemaError("condition requires string parameter '" + key + "'");
  }
  return std::get<std::string>(it->second);
}

double number_or(const ParamMap& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!std::holds_alternative<double>(it->second)) {
    throw SchemaError("condition parameter '" + key + "' must be numeric");
  }
  return std::get<double>(it->second);
}

std::string string_or(const ParamMap& params, const std::string& key,
                      std::string fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!std::holds_alternative<std::string>(it->second)) {
    throw SchemaError("condition parameter '" + key + "' must be a string");
  }
  return std::get<std::string>(it->second);
}

namespace {

int require_index(const ParamMap& params, const std::string& key) {
  double raw = require_number(params, key);
  int value = static_cast<int>(std::lround(raw));
  if (value < 1 || static_cast<double>(value) != raw) {
    throw SchemaError("condition parameter '" + key +
                      "' must be a positive integer");
  }
  return value;
}

// Index (1-based) of the minimum among the named features, ties resolved to
// the lowest index. Shared by the "closest"/"smallest angle" families.
int argmin_feature(const StateVector& state, const std::string& prefix,
                   const std::string& suffix, int count) {
  int best = 1;
  double best_value = state.at(prefix + "1" + suffix);
  for (int j = 2; j <= count; ++j) {
    double v = state.at(prefix + std::to_string(j) + suffix);
    if (v < best_value) {
      best_value = v;
      best = j;
    }
  }
  return best;
}

CompiledCondition make_interval2d(const ParamMap& params) {
  const double pos_lo = require_number(params, "pos_lo");
  const double pos_hi = require_number(params, "pos_hi");
  const double vel_lo = require_number(params, "vel_lo");
  const double vel_hi = require_number(params, "vel_hi");
  const bool pos_closed = number_or(params, "pos_closed_hi", 0) != 0;
  const bool vel_closed = number_or(params, "vel_closed_hi", 0) != 0;
  const std::string x = string_or(params, "x_feature", "position");
  const std::string y = string_or(params, "y_feature", "velocity");
  return [=](const StateVector& state) {
    const double px = state.at(x);
    const double py = state.at(y);
    const bool in_x = px >= pos_lo && (pos_closed ? px <= pos_hi : px < pos_hi);
    const bool in_y = py >= vel_lo && (vel_closed ? py <= vel_hi : py < vel_hi);
    return in_x && in_y;
  };
}

CompiledCondition make_feature_at_least(const ParamMap& params) {
  const std::string feature = require_string(params, "feature");
  const double min = require_number(params, "min");
  return [=](const StateVector& state) { return state.at(feature) >= min; };
}

CompiledCondition make_closest_to_ball(const ParamMap& params) {
  const int taker = require_index(params, "taker");
  const int takers = require_index(params, "takers");
  return [=](const StateVector& state) {
    return argmin_feature(state, "dist_ball_t", "", takers) == taker;
  };
}

CompiledCondition make_keeper_open(const ParamMap& params) {
  const int keeper = require_index(params, "keeper");
  const double threshold = require_number(params, "min_openness");
  return [=](const StateVector& state) {
    return state.at("open_k" + std::to_string(keeper)) >= threshold;
  };
}

CompiledCondition make_keeper_far(const ParamMap& params) {
  const int keeper = require_index(params, "keeper");
  const double threshold = require_number(params, "min_distance");
  return [=](const StateVector& state) {
    return state.at("mindist_k" + std::to_string(keeper)) >= threshold;
  };
}

CompiledCondition make_min_angle_keeper(const ParamMap& params) {
  const int taker = require_index(params, "taker");
  const int keeper = require_index(params, "keeper");
  const int keepers = require_index(params, "keepers");
  const std::string prefix = "angle_t" + std::to_string(taker) + "_k";
  return [=](const StateVector& state) {
    return argmin_feature(state, prefix, "", keepers) == keeper;
  };
}

CompiledCondition make_closest_taker_to_keeper(const ParamMap& params) {
  const int taker = require_index(params, "taker");
  const int keeper = require_index(params, "keeper");
  const int takers = require_index(params, "takers");
  const std::string suffix = "_k" + std::to_string(keeper);
  return [=](const StateVector& state) {
    return argmin_feature(state, "dist_t", suffix, takers) == taker;
  };
}

}  // namespace

ConditionRegistry ConditionRegistry::with_builtins() {
  ConditionRegistry registry;
  registry.register_kind("interval2d", make_interval2d);
  registry.register_kind("feature_at_least", make_feature_at_least);
  registry.register_kind("closest_to_ball", make_closest_to_ball);
  registry.register_kind("keeper_open", make_keeper_open);
  registry.register_kind("keeper_far", make_keeper_far);
  registry.register_kind("min_angle_keeper", make_min_angle_keeper);
  registry.register_kind("closest_taker_to_keeper",
                         make_closest_taker_to_keeper);
  return registry;
}

const ConditionRegistry& ConditionRegistry::builtin() {
  static const ConditionRegistry instance = with_builtins();
  return instance;
}

void ConditionRegistry::register_kind(std::string kind, Factory factory) {
  factories_[std::move(kind)] = std::move(factory);
}

bool ConditionRegistry::contains(std::string_view kind) const {
  return factories_.find(kind) != factories_.end();
}

CompiledCondition ConditionRegistry::compile(const ConditionSpec& spec) const {
  auto it = factories_.find(spec.kind);
  if (it == factories_.end()) throw UnknownConditionError(spec.kind);
  return it->second(spec.params);
}

bool ConditionRegistry::evaluate(const ConditionSpec& spec,
                                 const StateVector& state) const {
  return compile(spec)(state);
}

bool evaluate_condition(const ConditionSpec& spec, const StateVector& state,
                        const ConditionRegistry& registry) {
  return registry.evaluate(spec, state);
}

}  // namespace vafex

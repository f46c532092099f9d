#include "vafex/agent.hpp"

#include <algorithm>
#include <fstream>

#include "vafex/errors.hpp"

namespace vafex {

std::vector<std::pair<ArgumentId, ArgumentId>> build_attacks(
    std::span<const ActionArgument* const> applicable) {
  std::vector<std::pair<ArgumentId, ArgumentId>> attacks;
  for (std::size_t i = 0; i < applicable.size(); ++i) {
    for (std::size_t j = i + 1; j < applicable.size(); ++j) {
      const ActionArgument& a = *applicable[i];
      const ActionArgument& b = *applicable[j];
      const bool same_action = a.action == b.action;
      const bool same_target = a.target == b.target;
      if ((same_action && !same_target) || (!same_action && same_target)) {
        attacks.emplace_back(a.id, b.id);
        attacks.emplace_back(b.id, a.id);
      }
    }
  }
  std::sort(attacks.begin(), attacks.end());
  return attacks;
}

ArgumentationFramework build_defeat_graph(
    std::span<const ActionArgument* const> applicable,
    const ValueAssignment& values) {
  ArgumentationFramework af;
  for (const ActionArgument* arg : applicable) {
    values.at(arg->id);  // missing-value check up front
    af.add_argument(arg->id);
  }
  for (const auto& [from, to] : build_attacks(applicable)) {
    if (values.at(from) > values.at(to)) af.add_attack(from, to);
  }
  return af;
}

AAAgentModel::AAAgentModel(std::shared_ptr<const ArgumentCatalog> catalog,
                           ValueAssignment values, AgentIndex self,
                           std::string default_action)
    : catalog_(std::move(catalog)),
      values_(std::move(values)),
      self_(self),
      default_action_(std::move(default_action)) {
  if (!catalog_) throw InvariantError("agent model requires a catalog");
  if (self_ < 0 || self_ >= catalog_->team_size()) {
    throw SchemaError("agent index " + std::to_string(self_) +
                      " out of range for team size " +
                      std::to_string(catalog_->team_size()));
  }
  if (!values_.total_over(*catalog_)) {
    throw MissingValueError("value assignment is not total over the catalog");
  }
  if (!catalog_->action_in_alphabet(default_action_)) {
    throw SchemaError("default action '" + default_action_ +
                      "' is outside the catalog alphabet");
  }
}

namespace detail {

std::string accepted_action_for(
    const ExtensionSet& accepted,
    std::span<const ActionArgument* const> applicable, AgentIndex agent) {
  std::string action;
  for (const ActionArgument* arg : applicable) {
    if (arg->target != agent || !accepted.count(arg->id)) continue;
    if (action.empty()) {
      action = arg->action;
    } else if (action != arg->action) {
      // Distinct values make same-agent conflicts resolve strictly, so
      // accepted primary arguments can only disagree if that invariant broke.
      throw InvariantError("accepted primary arguments for agent " +
                           std::to_string(agent) + " recommend both '" +
                           action + "' and '" + arg->action + "'");
    }
  }
  return action;
}

}  // namespace detail

std::string AAAgentModel::select_action(const StateVector& state) const {
  std::vector<const ActionArgument*> applicable =
      applicable_arguments(*catalog_, state);
  if (applicable.empty()) return default_action_;

  ArgumentationFramework defeats = build_defeat_graph(applicable, values_);
  ExtensionSet accepted = grounded_extension(defeats);
  std::string action = detail::accepted_action_for(accepted, applicable, self_);
  return action.empty() ? default_action_ : action;
}

nlohmann::json AAAgentModel::to_json(const std::string& catalog_ref) const {
  return {{"catalog", catalog_ref},
          {"values", values_.to_json()},
          {"default_action", default_action_},
          {"self", self_}};
}

void AAAgentModel::save(const std::filesystem::path& path,
                        const std::string& catalog_ref) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file: " + path.string());
  out << to_json(catalog_ref).dump(2) << '\n';
}

AAAgentModel AAAgentModel::from_json(
    const nlohmann::json& j, std::shared_ptr<const ArgumentCatalog> catalog) {
  try {
    return AAAgentModel(std::move(catalog),
                        ValueAssignment::from_json(j.at("values")),
                        j.at("self").get<int>(),
                        j.at("default_action").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid model document: ") + e.what());
  }
}

AAAgentModel AAAgentModel::load(const std::filesystem::path& path,
                                const ConditionRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read model file: " + path.string());
  nlohmann::json j;
  std::filesystem::path catalog_path;
  try {
    in >> j;
    catalog_path = j.at("catalog").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("invalid model file " + path.string() + ": " + e.what());
  }
  if (catalog_path.is_relative()) {
    catalog_path = path.parent_path() / catalog_path;
  }
  auto catalog = std::make_shared<const ArgumentCatalog>(
      ArgumentCatalog::load(catalog_path, registry));
  return from_json(j, std::move(catalog));
}

}  // namespace vafex

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "vafex/argumentation.hpp"
#include "vafex/conditions.hpp"
#include "vafex/state.hpp"

namespace vafex {

/// Index of a team member; always < the catalog's team size.
using AgentIndex = int;

/// "If condition holds then `target` should do `action`".
struct ActionArgument {
  ArgumentId id;
  AgentIndex target = 0;
  std::string action;
  ConditionSpec condition;

  bool operator==(const ActionArgument&) const = default;
};

/// The fixed argument set a team reasons over. List order is the canonical
/// tie-break order everywhere. Conditions are compiled once at construction;
/// the catalog is immutable afterwards.
class ArgumentCatalog {
 public:
  ArgumentCatalog(std::vector<ActionArgument> arguments,
                  std::vector<std::string> action_alphabet, int team_size,
                  const ConditionRegistry& registry = ConditionRegistry::builtin());

  std::size_t size() const { return arguments_.size(); }
  int team_size() const { return team_size_; }
  const std::vector<ActionArgument>& arguments() const { return arguments_; }
  const ActionArgument& at(std::size_t i) const { return arguments_.at(i); }
  /// Sorted, unique action labels.
  const std::vector<std::string>& action_alphabet() const { return alphabet_; }
  bool action_in_alphabet(const std::string& action) const;

  const ActionArgument* find(const ArgumentId& id) const;
  /// Ids in canonical catalog order.
  std::vector<ArgumentId> ids() const;

  /// Indices of the arguments whose condition holds in `state`, in canonical
  /// order.
  std::vector<std::size_t> applicable(const StateVector& state) const;

  nlohmann::json to_json() const;
  static ArgumentCatalog from_json(
      const nlohmann::json& j,
      const ConditionRegistry& registry = ConditionRegistry::builtin());
  void save(const std::filesystem::path& path) const;
  static ArgumentCatalog load(
      const std::filesystem::path& path,
      const ConditionRegistry& registry = ConditionRegistry::builtin());

  bool operator==(const ArgumentCatalog& other) const {
    return arguments_ == other.arguments_ && alphabet_ == other.alphabet_ &&
           team_size_ == other.team_size_;
  }

 private:
  std::vector<ActionArgument> arguments_;
  std::vector<std::string> alphabet_;
  int team_size_;
  std::vector<CompiledCondition> compiled_;
  std::map<ArgumentId, std::size_t> index_by_id_;
};

/// The arguments applicable in `state`, in canonical catalog order.
std::vector<const ActionArgument*> applicable_arguments(
    const ArgumentCatalog& catalog, const StateVector& state);

}  // namespace vafex

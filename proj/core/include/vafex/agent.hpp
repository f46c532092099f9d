#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vafex/argumentation.hpp"
#include "vafex/catalog.hpp"
#include "vafex/state.hpp"
#include "vafex/values.hpp"

namespace vafex {

/// The fixed attack rule: A attacks B iff they recommend the same action to
/// different agents, or different actions to the same agent. The result is
/// symmetric: (A,B) present iff (B,A) present. Pairs are returned sorted.
std::vector<std::pair<ArgumentId, ArgumentId>> build_attacks(
    std::span<const ActionArgument* const> applicable);

/// Framework over the applicable arguments keeping only the attacks that
/// survive the value preference: (A,B) with val(A) > val(B). Antisymmetric by
/// construction since values are distinct.
ArgumentationFramework build_defeat_graph(
    std::span<const ActionArgument* const> applicable,
    const ValueAssignment& values);

/// One extracted (or hand-built) agent: the shared catalog, its own value
/// ordering over the whole catalog, which team slot it fills, and the action
/// it falls back to when no primary argument is accepted.
class AAAgentModel {
 public:
  AAAgentModel(std::shared_ptr<const ArgumentCatalog> catalog,
               ValueAssignment values, AgentIndex self,
               std::string default_action);

  const ArgumentCatalog& catalog() const { return *catalog_; }
  const std::shared_ptr<const ArgumentCatalog>& catalog_ptr() const {
    return catalog_;
  }
  const ValueAssignment& values() const { return values_; }
  AgentIndex self() const { return self_; }
  const std::string& default_action() const { return default_action_; }

  /// Applicable arguments -> defeat graph -> grounded extension -> the action
  /// shared by the accepted primary arguments, or the default when none are
  /// accepted. Pure and deterministic.
  std::string select_action(const StateVector& state) const;

  /// {"catalog": reference, "values": {...}, "default_action": ..., "self": n}
  nlohmann::json to_json(const std::string& catalog_ref) const;
  void save(const std::filesystem::path& path,
            const std::string& catalog_ref) const;
  /// Resolves a relative catalog reference against the model file's directory.
  static AAAgentModel load(
      const std::filesystem::path& path,
      const ConditionRegistry& registry = ConditionRegistry::builtin());
  static AAAgentModel from_json(
      const nlohmann::json& j, std::shared_ptr<const ArgumentCatalog> catalog);

 private:
  std::shared_ptr<const ArgumentCatalog> catalog_;
  ValueAssignment values_;
  AgentIndex self_;
  std::string default_action_;
};

namespace detail {
/// Action recommended to `agent` by the accepted arguments, empty if none.
/// Throws InvariantError if accepted primary arguments disagree.
std::string accepted_action_for(const ExtensionSet& accepted,
                                std::span<const ActionArgument* const> applicable,
                                AgentIndex agent);
}  // namespace detail

}  // namespace vafex

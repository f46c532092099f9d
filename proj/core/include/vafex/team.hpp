#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vafex/agent.hpp"

namespace vafex {

/// A group of extracted agents over one shared catalog. Decentralized teams
/// run each member's selection independently with its own value ordering;
/// centralized teams resolve one defeat graph with a single shared ordering
/// and read every agent's action from the same grounded extension.
class TeamModel {
 public:
  enum class Mode { kDecentralized, kCentralized };

  /// One member per agent index, in order. All members must share the catalog.
  static TeamModel decentralized(std::vector<AAAgentModel> members);

  /// Single selector: one value ordering for the whole team, one default
  /// action per agent.
  static TeamModel centralized(std::shared_ptr<const ArgumentCatalog> catalog,
                               ValueAssignment shared_values,
                               std::vector<std::string> default_actions);

  Mode mode() const { return mode_; }
  int team_size() const { return static_cast<int>(members_.size()); }
  const ArgumentCatalog& catalog() const { return *catalog_; }
  const std::shared_ptr<const ArgumentCatalog>& catalog_ptr() const {
    return catalog_;
  }
  const AAAgentModel& member(AgentIndex i) const { return members_.at(i); }
  const std::vector<AAAgentModel>& members() const { return members_; }

  std::map<AgentIndex, std::string> select_joint_action(
      const StateVector& state) const;

 private:
  TeamModel(Mode mode, std::shared_ptr<const ArgumentCatalog> catalog,
            std::vector<AAAgentModel> members);

  Mode mode_;
  std::shared_ptr<const ArgumentCatalog> catalog_;
  std::vector<AAAgentModel> members_;
};

/// Loads one model file per agent (order = agent index), sharing the catalog
/// instance across members when they reference the same file.
TeamModel load_team(const std::vector<std::filesystem::path>& model_paths,
                    TeamModel::Mode mode = TeamModel::Mode::kDecentralized,
                    const ConditionRegistry& registry = ConditionRegistry::builtin());

}  // namespace vafex

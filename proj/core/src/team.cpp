#include "vafex/team.hpp"

#include <fstream>
#include <utility>

#include "vafex/errors.hpp"

namespace vafex {

TeamModel::TeamModel(Mode mode, std::shared_ptr<const ArgumentCatalog> catalog,
                     std::vector<AAAgentModel> members)
    : mode_(mode), catalog_(std::move(catalog)), members_(std::move(members)) {
  if (members_.empty()) throw SchemaError("team model requires members");
  if (static_cast<int>(members_.size()) != catalog_->team_size()) {
    throw SchemaError("team has " + std::to_string(members_.size()) +
                      " members, catalog declares team size " +
                      std::to_string(catalog_->team_size()));
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].self() != static_cast<AgentIndex>(i)) {
      throw SchemaError("member " + std::to_string(i) + " declares self=" +
                        std::to_string(members_[i].self()));
    }
    const bool same_catalog =
        members_[i].catalog_ptr() == catalog_ || members_[i].catalog() == *catalog_;
    if (!same_catalog) {
      throw SchemaError("team members must share one catalog");
    }
  }
}

TeamModel TeamModel::decentralized(std::vector<AAAgentModel> members) {
  if (members.empty()) throw SchemaError("team model requires members");
  auto catalog = members.front().catalog_ptr();
  return TeamModel(Mode::kDecentralized, std::move(catalog), std::move(members));
}

TeamModel TeamModel::centralized(std::shared_ptr<const ArgumentCatalog> catalog,
                                 ValueAssignment shared_values,
                                 std::vector<std::string> default_actions) {
  if (!catalog) throw InvariantError("team model requires a catalog");
  if (static_cast<int>(default_actions.size()) != catalog->team_size()) {
    throw SchemaError("centralized team needs one default action per agent");
  }
  std::vector<AAAgentModel> members;
  members.reserve(default_actions.size());
  for (std::size_t i = 0; i < default_actions.size(); ++i) {
    members.emplace_back(catalog, shared_values, static_cast<AgentIndex>(i),
                         default_actions[i]);
  }
  return TeamModel(Mode::kCentralized, std::move(catalog), std::move(members));
}

std::map<AgentIndex, std::string> TeamModel::select_joint_action(
    const StateVector& state) const {
  std::map<AgentIndex, std::string> joint;
  if (mode_ == Mode::kDecentralized) {
    for (const AAAgentModel& member : members_) {
      joint[member.self()] = member.select_action(state);
    }
    return joint;
  }

  // Centralized: one grounded extension, all agents read from it.
  std::vector<const ActionArgument*> applicable =
      applicable_arguments(*catalog_, state);
  ExtensionSet accepted;
  if (!applicable.empty()) {
    accepted = grounded_extension(
        build_defeat_graph(applicable, members_.front().values()));
  }
  for (const AAAgentModel& member : members_) {
    std::string action =
        detail::accepted_action_for(accepted, applicable, member.self());
    joint[member.self()] = action.empty() ? member.default_action() : action;
  }
  return joint;
}

TeamModel load_team(const std::vector<std::filesystem::path>& model_paths,
                    TeamModel::Mode mode, const ConditionRegistry& registry) {
  if (model_paths.empty()) throw SchemaError("no model files given");

  std::map<std::string, std::shared_ptr<const ArgumentCatalog>> catalog_cache;
  std::vector<AAAgentModel> members;
  for (const auto& path : model_paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read model file: " + path.string());
    nlohmann::json j;
    std::filesystem::path catalog_path;
    try {
      in >> j;
      catalog_path = j.at("catalog").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("invalid model file " + path.string() + ": " +
                        e.what());
    }
    if (catalog_path.is_relative()) {
      catalog_path = path.parent_path() / catalog_path;
    }
    std::string key = std::filesystem::weakly_canonical(catalog_path).string();
    auto it = catalog_cache.find(key);
    if (it == catalog_cache.end()) {
      it = catalog_cache
               .emplace(key, std::make_shared<const ArgumentCatalog>(
                                 ArgumentCatalog::load(catalog_path, registry)))
               .first;
    }
    members.push_back(AAAgentModel::from_json(j, it->second));
  }

  if (mode == TeamModel::Mode::kDecentralized) {
    return TeamModel::decentralized(std::move(members));
  }
  for (const AAAgentModel& member : members) {
    if (!(member.values() == members.front().values())) {
      throw SchemaError(
          "centralized team requires a single shared value assignment");
    }
  }
  std::vector<std::string> defaults;
  defaults.reserve(members.size());
  for (const AAAgentModel& member : members) {
    defaults.push_back(member.default_action());
  }
  return TeamModel::centralized(members.front().catalog_ptr(),
                                members.front().values(), std::move(defaults));
}

}  // namespace vafex

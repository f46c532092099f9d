#include "vafex/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <utility>

#include "vafex/errors.hpp"

namespace vafex {

ArgumentCatalog::ArgumentCatalog(std::vector<ActionArgument> arguments,
                                 std::vector<std::string> action_alphabet,
                                 int team_size,
                                 const ConditionRegistry& registry)
    : arguments_(std::move(arguments)),
      alphabet_(std::move(action_alphabet)),
      team_size_(team_size) {
  if (team_size_ < 1) throw SchemaError("team_size must be at least 1");
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()),
                  alphabet_.end());

  compiled_.reserve(arguments_.size());
  for (std::size_t i = 0; i < arguments_.size(); ++i) {
    const ActionArgument& arg = arguments_[i];
    if (arg.id.empty()) throw SchemaError("argument id must be non-empty");
    if (!index_by_id_.emplace(arg.id, i).second) {
      throw SchemaError("duplicate argument id: " + arg.id);
    }
    if (arg.target < 0 || arg.target >= team_size_) {
      throw SchemaError("argument " + arg.id + " targets agent " +
                        std::to_string(arg.target) + ", team size is " +
                        std::to_string(team_size_));
    }
    if (!action_in_alphabet(arg.action)) {
      throw SchemaError("argument " + arg.id + " uses action '" + arg.action +
                        "' outside the declared alphabet");
    }
    compiled_.push_back(registry.compile(arg.condition));
  }
}

bool ArgumentCatalog::action_in_alphabet(const std::string& action) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), action);
}

const ActionArgument* ArgumentCatalog::find(const ArgumentId& id) const {
  auto it = index_by_id_.find(id);
  if (it == index_by_id_.end()) return nullptr;
  return &arguments_[it->second];
}

std::vector<ArgumentId> ArgumentCatalog::ids() const {
  std::vector<ArgumentId> out;
  out.reserve(arguments_.size());
  for (const auto& arg : arguments_) out.push_back(arg.id);
  return out;
}

std::vector<std::size_t> ArgumentCatalog::applicable(
    const StateVector& state) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arguments_.size(); ++i) {
    if (compiled_[i](state)) out.push_back(i);
  }
  return out;
}

nlohmann::json ArgumentCatalog::to_json() const {
  nlohmann::json args = nlohmann::json::array();
  for (const auto& arg : arguments_) {
    args.push_back({{"id", arg.id},
                    {"target", arg.target},
                    {"action", arg.action},
                    {"condition", condition_to_json(arg.condition)}});
  }
  return {{"team_size", team_size_},
          {"actions", alphabet_},
          {"arguments", std::move(args)}};
}

ArgumentCatalog ArgumentCatalog::from_json(const nlohmann::json& j,
                                           const ConditionRegistry& registry) {
  try {
    std::vector<ActionArgument> arguments;
    for (const auto& a : j.at("arguments")) {
      ActionArgument arg;
      arg.id = a.at("id").get<std::string>();
      arg.target = a.at("target").get<int>();
      arg.action = a.at("action").get<std::string>();
      arg.condition = condition_from_json(a.at("condition"));
      arguments.push_back(std::move(arg));
    }
    return ArgumentCatalog(std::move(arguments),
                           j.at("actions").get<std::vector<std::string>>(),
                           j.at("team_size").get<int>(), registry);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid catalog document: ") + e.what());
  }
}

void ArgumentCatalog::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write catalog file: " + path.string());
  out << to_json().dump(2) << '\n';
}

ArgumentCatalog ArgumentCatalog::load(const std::filesystem::path& path,
                                      const ConditionRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read catalog file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("invalid catalog file " + path.string() + ": " +
                      e.what());
  }
  return from_json(j, registry);
}

std::vector<const ActionArgument*> applicable_arguments(
    const ArgumentCatalog& catalog, const StateVector& state) {
  std::vector<const ActionArgument*> out;
  for (std::size_t i : catalog.applicable(state)) {
    out.push_back(&catalog.at(i));
  }
  return out;
}

}  // namespace vafex

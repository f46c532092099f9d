#include "vafex/values.hpp"

#include <set>
#include <utility>

#include "vafex/errors.hpp"

namespace vafex {

ValueAssignment::ValueAssignment(std::map<ArgumentId, int> values)
    : values_(std::move(values)) {
  std::set<int> seen;
  for (const auto& [id, value] : values_) {
    if (!seen.insert(value).second) {
      throw DuplicateValueError("value " + std::to_string(value) +
                                " assigned to more than one argument");
    }
  }
}

int ValueAssignment::at(const ArgumentId& id) const {
  auto it = values_.find(id);
  if (it == values_.end()) throw MissingValueError(id);
  return it->second;
}

bool ValueAssignment::total_over(const ArgumentCatalog& catalog) const {
  for (const auto& arg : catalog.arguments()) {
    if (!contains(arg.id)) return false;
  }
  return true;
}

nlohmann::json ValueAssignment::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, value] : values_) j[id] = value;
  return j;
}

ValueAssignment ValueAssignment::from_json(const nlohmann::json& j) {
  std::map<ArgumentId, int> values;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      values[it.key()] = it.value().get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid value assignment: ") + e.what());
  }
  return ValueAssignment(std::move(values));
}

}  // namespace vafex

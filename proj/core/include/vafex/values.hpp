#pragma once

#include <map>

#include <json.hpp>

#include "vafex/argumentation.hpp"
#include "vafex/catalog.hpp"

namespace vafex {

/// Lookup table from arguments to their integer values. Values must be
/// pairwise distinct so that every conflict resolves strictly; the integer
/// ordering is the (fixed) value preference.
class ValueAssignment {
 public:
  ValueAssignment() = default;
  explicit ValueAssignment(std::map<ArgumentId, int> values);

  int at(const ArgumentId& id) const;
  bool contains(const ArgumentId& id) const { return values_.count(id) > 0; }
  std::size_t size() const { return values_.size(); }
  const std::map<ArgumentId, int>& values() const { return values_; }

  /// True iff every catalog argument has a value.
  bool total_over(const ArgumentCatalog& catalog) const;

  nlohmann::json to_json() const;
  static ValueAssignment from_json(const nlohmann::json& j);

  bool operator==(const ValueAssignment&) const = default;

 private:
  std::map<ArgumentId, int> values_;
};

}  // namespace vafex

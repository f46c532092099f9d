#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vafex/errors.hpp"

namespace vafex {

/// A named feature vector: the shared observation conditions are evaluated
/// against. Stored as a flat array sorted by name; lookups are binary
/// searches.
class StateVector {
 public:
  using Item = std::pair<std::string, double>;

  StateVector() = default;

  StateVector(std::initializer_list<Item> items)
      : StateVector(std::vector<Item>(items)) {}

  explicit StateVector(std::vector<Item> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end(),
              [](const Item& a, const Item& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < items_.size(); ++i) {
      if (items_[i].first == items_[i - 1].first) {
        throw SchemaError("duplicate feature: " + items_[i].first);
      }
    }
  }

  void set(std::string name, double value) {
    auto it = lower_bound(name);
    if (it != items_.end() && it->first == name) {
      it->second = value;
    } else {
      items_.insert(it, Item{std::move(name), value});
    }
  }

  const double* find(std::string_view name) const noexcept {
    auto it = lower_bound(name);
    if (it != items_.end() && it->first == name) return &it->second;
    return nullptr;
  }

  bool has(std::string_view name) const noexcept { return find(name) != nullptr; }

  double at(std::string_view name) const {
    if (const double* v = find(name)) return *v;
    throw MissingFeatureError(std::string(name));
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  /// Items sorted by feature name.
  const std::vector<Item>& items() const noexcept { return items_; }

  bool operator==(const StateVector&) const = default;

 private:
  std::vector<Item>::iterator lower_bound(std::string_view name) {
    return std::lower_bound(
        items_.begin(), items_.end(), name,
        [](const Item& a, std::string_view b) { return a.first < b; });
  }
  std::vector<Item>::const_iterator lower_bound(std::string_view name) const {
    return std::lower_bound(
        items_.begin(), items_.end(), name,
        [](const Item& a, std::string_view b) { return a.first < b; });
  }

  std::vector<Item> items_;
};

}  // namespace vafex

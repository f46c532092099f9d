#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vafex {

using ArgumentId = std::string;

/// A set of arguments, candidate or computed extension. Always iterates in
/// lexicographic id order, which keeps every downstream output deterministic.
using ExtensionSet = std::set<ArgumentId>;

/// Finite abstract argumentation framework: a set of arguments plus a binary
/// attack relation between them. Immutable use after construction is the
/// expected pattern; all semantics operations are pure functions on top.
class ArgumentationFramework {
 public:
  using Attack = std::pair<ArgumentId, ArgumentId>;

  ArgumentationFramework() = default;
  explicit ArgumentationFramework(std::set<ArgumentId> arguments,
                                  std::set<Attack> attacks = {});

  void add_argument(ArgumentId id);
  /// Both endpoints must already be arguments. Self-attacks are allowed.
  void add_attack(const ArgumentId& from, const ArgumentId& to);

  bool contains(const ArgumentId& id) const { return arguments_.count(id) > 0; }
  bool has_attack(const ArgumentId& from, const ArgumentId& to) const {
    return attacks_.count({from, to}) > 0;
  }

  const std::set<ArgumentId>& arguments() const { return arguments_; }
  const std::set<Attack>& attacks() const { return attacks_; }
  std::size_t size() const { return arguments_.size(); }

  /// {"arguments": [sorted ids], "attacks": [[from, to] sorted]}
  nlohmann::json to_json() const;
  static ArgumentationFramework from_json(const nlohmann::json& j);

  bool operator==(const ArgumentationFramework&) const = default;

 private:
  std::set<ArgumentId> arguments_;
  std::set<Attack> attacks_;
};

/// True iff some member of `s` attacks `a`.
bool set_attacks(const ArgumentationFramework& af, const ExtensionSet& s,
                 const ArgumentId& a);

/// True iff no attack has both endpoints inside `s`.
bool is_conflict_free(const ArgumentationFramework& af, const ExtensionSet& s);

/// True iff `s` attacks every attacker of `a`.
bool defends(const ArgumentationFramework& af, const ExtensionSet& s,
             const ArgumentId& a);

/// The set of arguments defended by `s`. Monotone in `s`.
ExtensionSet characteristic_function(const ArgumentationFramework& af,
                                     const ExtensionSet& s);

/// Least fixpoint of the characteristic function from the empty set; the
/// unique subset-minimal complete extension. Terminates within |arguments|
/// iterations.
ExtensionSet grounded_extension(const ArgumentationFramework& af);

inline constexpr std::size_t kDefaultEnumerationBound = 16;

/// Brute-force test oracle: every complete extension, found by checking all
/// 2^n subsets. Results are in canonical subset-enumeration order over the
/// lexicographically sorted argument list. Throws SizeBoundError above
/// `max_arguments`.
std::vector<ExtensionSet> enumerate_complete_extensions(
    const ArgumentationFramework& af,
    std::size_t max_arguments = kDefaultEnumerationBound);

}  // namespace vafex

#include "vafex/argumentation.hpp"

#include <map>

#include "vafex/errors.hpp"

namespace vafex {

namespace {

void require_member(const ArgumentationFramework& af, const ArgumentId& id) {
  if (!af.contains(id)) throw UnknownArgumentError(id);
}

void require_subset(const ArgumentationFramework& af, const ExtensionSet& s) {
  for (const auto& id : s) require_member(af, id);
}

}  // namespace

ArgumentationFramework::ArgumentationFramework(std::set<ArgumentId> arguments,
                                               std::set<Attack> attacks)
    : arguments_(std::move(arguments)) {
  for (auto& att : attacks) add_attack(att.first, att.second);
}

void ArgumentationFramework::add_argument(ArgumentId id) {
  if (id.empty()) throw InvariantError("argument id must be non-empty");
  arguments_.insert(std::move(id));
}

void ArgumentationFramework::add_attack(const ArgumentId& from,
                                        const ArgumentId& to) {
  require_member(*this, from);
  require_member(*this, to);
  attacks_.insert({from, to});
}

nlohmann::json ArgumentationFramework::to_json() const {
  nlohmann::json j;
  j["arguments"] = nlohmann::json::array();
  for (const auto& id : arguments_) j["arguments"].push_back(id);
  j["attacks"] = nlohmann::json::array();
  for (const auto& [from, to] : attacks_) {
    j["attacks"].push_back(nlohmann::json::array({from, to}));
  }
  return j;
}

ArgumentationFramework ArgumentationFramework::from_json(
    const nlohmann::json& j) {
  ArgumentationFramework af;
  try {
    for (const auto& id : j.at("arguments")) {
      af.add_argument(id.get<ArgumentId>());
    }
    for (const auto& att : j.at("attacks")) {
      af.add_attack(att.at(0).get<ArgumentId>(), att.at(1).get<ArgumentId>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid framework document: ") + e.what());
  }
  return af;
}

bool set_attacks(const ArgumentationFramework& af, const ExtensionSet& s,
                 const ArgumentId& a) {
  require_member(af, a);
  require_subset(af, s);
  for (const auto& b : s) {
    if (af.has_attack(b, a)) return true;
  }
  return false;
}

bool is_conflict_free(const ArgumentationFramework& af, const ExtensionSet& s) {
  require_subset(af, s);
  for (const auto& [from, to] : af.attacks()) {
    if (s.count(from) && s.count(to)) return false;
  }
  return true;
}

bool defends(const ArgumentationFramework& af, const ExtensionSet& s,
             const ArgumentId& a) {
  require_member(af, a);
  require_subset(af, s);
  for (const auto& [from, to] : af.attacks()) {
    if (to != a) continue;
    if (!set_attacks(af, s, from)) return false;
  }
  return true;
}

ExtensionSet characteristic_function(const ArgumentationFramework& af,
                                     const ExtensionSet& s) {
  require_subset(af, s);

  // One pass over the attack relation instead of per-argument rescans; the
  // result is identical to calling defends() on every argument.
  ExtensionSet attacked_by_s;
  for (const auto& [from, to] : af.attacks()) {
    if (s.count(from)) attacked_by_s.insert(to);
  }
  std::map<ArgumentId, bool> defended;
  for (const auto& id : af.arguments()) defended[id] = true;
  for (const auto& [from, to] : af.attacks()) {
    if (!attacked_by_s.count(from)) defended[to] = false;
  }

  ExtensionSet result;
  for (const auto& [id, ok] : defended) {
    if (ok) result.insert(id);
  }
  return result;
}

ExtensionSet grounded_extension(const ArgumentationFramework& af) {
  ExtensionSet current;
  for (std::size_t round = 0; round <= af.size(); ++round) {
    ExtensionSet next = characteristic_function(af, current);
    if (next == current) return current;
    current = std::move(next);
  }
  // F is monotone from the empty set, so the fixpoint must land within
  // |arguments| rounds.
  throw InvariantError("grounded extension fixpoint did not converge");
}

std::vector<ExtensionSet> enumerate_complete_extensions(
    const ArgumentationFramework& af, std::size_t max_arguments) {
  const std::size_t n = af.size();
  if (n > max_arguments) throw SizeBoundError(n, max_arguments);

  std::vector<ArgumentId> ids(af.arguments().begin(), af.arguments().end());
  std::vector<ExtensionSet> result;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ExtensionSet s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::uint64_t{1} << k)) s.insert(ids[k]);
    }
    if (!is_conflict_free(af, s)) continue;
    if (characteristic_function(af, s) != s) continue;
    // F(S) = S means S defends exactly its own members: admissible and
    // closed under defense, i.e. complete.
    result.push_back(std::move(s));
  }
  return result;
}

}  // namespace vafex

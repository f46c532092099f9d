#include "vafex/extraction.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "vafex/errors.hpp"

namespace vafex {

ArgumentPreferenceGraph::ArgumentPreferenceGraph(std::set<ArgumentId> nodes)
    : nodes_(std::move(nodes)) {}

void ArgumentPreferenceGraph::increment_edge(const ArgumentId& from,
                                             const ArgumentId& to,
                                             std::int64_t by) {
  if (!nodes_.count(from)) throw UnknownArgumentError(from);
  if (!nodes_.count(to)) throw UnknownArgumentError(to);
  if (from == to) throw InvariantError("self-edge in preference graph: " + from);
  if (by < 0) throw InvariantError("negative preference increment");
  if (by == 0) return;
  weights_[{from, to}] += by;
}

void ArgumentPreferenceGraph::remove_edge(const ArgumentId& from,
                                          const ArgumentId& to) {
  weights_.erase({from, to});
}

std::int64_t ArgumentPreferenceGraph::weight(const ArgumentId& from,
                                             const ArgumentId& to) const {
  auto it = weights_.find({from, to});
  return it == weights_.end() ? 0 : it->second;
}

std::int64_t ArgumentPreferenceGraph::max_weight() const {
  std::int64_t best = 0;
  for (const auto& [edge, w] : weights_) best = std::max(best, w);
  return best;
}

void ArgumentPreferenceGraph::merge(const ArgumentPreferenceGraph& other) {
  if (other.nodes_ != nodes_) {
    throw InvariantError("cannot merge preference graphs over different nodes");
  }
  for (const auto& [edge, w] : other.weights_) weights_[edge] += w;
}

namespace {

using Edge = ArgumentPreferenceGraph::Edge;

// First cycle found by DFS in lexicographic node/neighbour order, as its edge
// list; empty when the graph is acyclic.
std::vector<Edge> find_cycle(const std::map<Edge, std::int64_t>& weights,
                             const std::set<ArgumentId>& nodes) {
  std::map<ArgumentId, std::vector<ArgumentId>> adjacency;
  for (const auto& [edge, w] : weights) {
    adjacency[edge.first].push_back(edge.second);  // sorted: map key order
  }

  enum class Color { kWhite, kGray, kBlack };
  std::map<ArgumentId, Color> color;
  for (const auto& id : nodes) color[id] = Color::kWhite;

  std::vector<ArgumentId> path;
  std::vector<Edge> cycle;

  std::function<bool(const ArgumentId&)> visit = [&](const ArgumentId& v) {
    color[v] = Color::kGray;
    path.push_back(v);
    auto it = adjacency.find(v);
    if (it != adjacency.end()) {
      for (const ArgumentId& w : it->second) {
        if (color[w] == Color::kGray) {
          auto start = std::find(path.begin(), path.end(), w);
          for (auto p = start; p + 1 != path.end(); ++p) {
            cycle.push_back({*p, *(p + 1)});
          }
          cycle.push_back({v, w});
          return true;
        }
        if (color[w] == Color::kWhite && visit(w)) return true;
      }
    }
    path.pop_back();
    color[v] = Color::kBlack;
    return false;
  };

  for (const auto& id : nodes) {
    if (color[id] == Color::kWhite && visit(id)) return cycle;
  }
  return {};
}

}  // namespace

bool ArgumentPreferenceGraph::is_acyclic() const {
  return find_cycle(weights_, nodes_).empty();
}

ArgumentPreferenceGraph prune(const ArgumentPreferenceGraph& apg,
                              std::int64_t p) {
  if (p < 0) throw InvariantError("pruning threshold must be non-negative");
  ArgumentPreferenceGraph out(apg.nodes());
  for (const auto& [edge, w] : apg.edges()) {
    if (w >= p) out.weights_[edge] = w;
  }
  return out;
}

AcyclicConversion convert_to_acyclic(const ArgumentPreferenceGraph& apg,
                                     std::int64_t p) {
  AcyclicConversion result{prune(apg, p), {}};
  while (true) {
    std::vector<Edge> cycle =
        find_cycle(result.dag.edges(), result.dag.nodes());
    if (cycle.empty()) break;

    // Minimum weight on the cycle; among ties drop the lexicographically
    // largest (from, to) pair.
    Edge victim = cycle.front();
    std::int64_t victim_weight = result.dag.weight(victim.first, victim.second);
    for (const Edge& edge : cycle) {
      const std::int64_t w = result.dag.weight(edge.first, edge.second);
      if (w < victim_weight || (w == victim_weight && edge > victim)) {
        victim = edge;
        victim_weight = w;
      }
    }
    result.dag.remove_edge(victim.first, victim.second);
    result.removed.push_back({victim.first, victim.second, victim_weight});
  }
  return result;
}

Ordering topological_sort_with_default(const ArgumentPreferenceGraph& dag,
                                       const Ordering& default_ordering) {
  std::map<ArgumentId, std::size_t> rank;
  for (std::size_t i = 0; i < default_ordering.ranked.size(); ++i) {
    if (!rank.emplace(default_ordering.ranked[i], i).second) {
      throw SchemaError("duplicate id in default ordering: " +
                        default_ordering.ranked[i]);
    }
  }
  for (const ArgumentId& id : dag.nodes()) {
    if (!rank.count(id)) {
      throw MissingNodeError("default ordering does not cover node: " + id);
    }
  }

  std::map<ArgumentId, std::size_t> in_degree;
  std::map<ArgumentId, std::vector<ArgumentId>> adjacency;
  for (const ArgumentId& id : dag.nodes()) in_degree[id] = 0;
  for (const auto& [edge, w] : dag.edges()) {
    adjacency[edge.first].push_back(edge.second);
    ++in_degree[edge.second];
  }

  // Available nodes keyed by default rank; extraction always takes the
  // best-ranked one.
  std::map<std::size_t, ArgumentId> available;
  for (const auto& [id, deg] : in_degree) {
    if (deg == 0) available.emplace(rank[id], id);
  }

  Ordering out;
  out.ranked.reserve(dag.nodes().size());
  while (!available.empty()) {
    ArgumentId next = available.begin()->second;
    available.erase(available.begin());
    out.ranked.push_back(next);
    auto it = adjacency.find(next);
    if (it == adjacency.end()) continue;
    for (const ArgumentId& succ : it->second) {
      if (--in_degree[succ] == 0) available.emplace(rank[succ], succ);
    }
  }
  if (out.ranked.size() != dag.nodes().size()) {
    throw CycleError("preference graph is not acyclic");
  }
  return out;
}

nlohmann::json ExtractionConfig::to_json() const {
  return {{"pruning_threshold", pruning_threshold},
          {"default_ordering", default_ordering.ranked}};
}

ExtractionConfig ExtractionConfig::from_json(const nlohmann::json& j) {
  ExtractionConfig config;
  try {
    config.pruning_threshold = j.at("pruning_threshold").get<std::int64_t>();
    config.default_ordering.ranked =
        j.at("default_ordering").get<std::vector<ArgumentId>>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid extraction config: ") + e.what());
  }
  if (config.pruning_threshold < 0) {
    throw SchemaError("pruning_threshold must be non-negative");
  }
  return config;
}

ExtractionConfig ExtractionConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read extraction config: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("invalid extraction config " + path.string() + ": " +
                      e.what());
  }
  return from_json(j);
}

namespace {

// Shared accumulation step: split the applicable arguments into those whose
// recommendation matches their target's executed action and those that
// disagree, then bump every (agree, disagree) edge.
void accumulate_step(ArgumentPreferenceGraph& apg,
                     const std::vector<const ActionArgument*>& applicable,
                     const std::map<AgentIndex, std::string>& actions) {
  std::vector<const ActionArgument*> relevant;
  std::vector<const ActionArgument*> irrelevant;
  for (const ActionArgument* arg : applicable) {
    auto it = actions.find(arg->target);
    if (it == actions.end()) continue;
    if (arg->action == it->second) {
      relevant.push_back(arg);
    } else {
      irrelevant.push_back(arg);
    }
  }
  for (const ActionArgument* a : relevant) {
    for (const ActionArgument* b : irrelevant) {
      apg.increment_edge(a->id, b->id);
    }
  }
}

}  // namespace

ArgumentPreferenceGraph build_apg(const TrajectorySet& trajectories,
                                  const ArgumentCatalog& catalog,
                                  AgentIndex target) {
  std::set<ArgumentId> nodes;
  for (const auto& arg : catalog.arguments()) nodes.insert(arg.id);
  ArgumentPreferenceGraph apg(std::move(nodes));

  for_each_pair(trajectories, target,
                [&](const StateVector& state, const std::string& action) {
                  std::vector<const ActionArgument*> mine;
                  for (std::size_t i : catalog.applicable(state)) {
                    if (catalog.at(i).target == target) {
                      mine.push_back(&catalog.at(i));
                    }
                  }
                  accumulate_step(apg, mine, {{target, action}});
                });
  return apg;
}

ArgumentPreferenceGraph build_apg_joint(const TrajectorySet& trajectories,
                                        const ArgumentCatalog& catalog) {
  std::set<ArgumentId> nodes;
  for (const auto& arg : catalog.arguments()) nodes.insert(arg.id);
  ArgumentPreferenceGraph apg(std::move(nodes));

  for (const Episode& episode : trajectories.episodes()) {
    for (const TimeStep& step : episode.steps) {
      accumulate_step(apg, applicable_arguments(catalog, step.state),
                      step.actions);
    }
  }
  return apg;
}

ValueAssignment ordering_to_values(const Ordering& ordering) {
  const int n = static_cast<int>(ordering.ranked.size());
  std::map<ArgumentId, int> values;
  for (int k = 0; k < n; ++k) {
    if (!values.emplace(ordering.ranked[k], n - k).second) {
      throw SchemaError("duplicate argument id in ordering: " +
                        ordering.ranked[k]);
    }
  }
  return ValueAssignment(std::move(values));
}

nlohmann::json ExtractionOutcome::to_json() const {
  nlohmann::json removed = nlohmann::json::array();
  for (const RemovedEdge& edge : cycle_edges_removed) {
    removed.push_back(nlohmann::json::array({edge.from, edge.to, edge.weight}));
  }
  return {{"ranked", ordering.ranked},
          {"values", values.to_json()},
          {"cycle_edges_removed", std::move(removed)}};
}

void ExtractionOutcome::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write ordering file: " + path.string());
  out << to_json().dump(2) << '\n';
}

namespace {

ExtractionOutcome finish_extraction(const ArgumentPreferenceGraph& apg,
                                    const ExtractionConfig& config) {
  AcyclicConversion conversion =
      convert_to_acyclic(apg, config.pruning_threshold);
  ExtractionOutcome outcome;
  outcome.ordering =
      topological_sort_with_default(conversion.dag, config.default_ordering);
  outcome.values = ordering_to_values(outcome.ordering);
  outcome.cycle_edges_removed = std::move(conversion.removed);
  return outcome;
}

}  // namespace

ExtractionOutcome extract_with_log(const TrajectorySet& trajectories,
                                   const ArgumentCatalog& catalog,
                                   AgentIndex target,
                                   const ExtractionConfig& config) {
  return finish_extraction(build_apg(trajectories, catalog, target), config);
}

ExtractionOutcome extract_joint_with_log(const TrajectorySet& trajectories,
                                         const ArgumentCatalog& catalog,
                                         const ExtractionConfig& config) {
  return finish_extraction(build_apg_joint(trajectories, catalog), config);
}

Ordering extract_ordering(const TrajectorySet& trajectories,
                          const ArgumentCatalog& catalog, AgentIndex target,
                          const ExtractionConfig& config) {
  return extract_with_log(trajectories, catalog, target, config).ordering;
}

Ordering catalog_order(const ArgumentCatalog& catalog) {
  return Ordering{catalog.ids()};
}

Ordering primaries_first_order(const ArgumentCatalog& catalog,
                               AgentIndex target) {
  Ordering out;
  out.ranked.reserve(catalog.size());
  for (const auto& arg : catalog.arguments()) {
    if (arg.target == target) out.ranked.push_back(arg.id);
  }
  for (const auto& arg : catalog.arguments()) {
    if (arg.target != target) out.ranked.push_back(arg.id);
  }
  return out;
}

Ordering reversed(const Ordering& ordering) {
  Ordering out = ordering;
  std::reverse(out.ranked.begin(), out.ranked.end());
  return out;
}

}  // namespace vafex

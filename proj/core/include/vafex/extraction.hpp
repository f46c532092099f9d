#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vafex/catalog.hpp"
#include "vafex/trajectory.hpp"
#include "vafex/values.hpp"

namespace vafex {

/// Weighted digraph of pairwise argument preferences accumulated from
/// trajectories. An edge A -> B of weight w means: on w trajectory steps, A
/// was applicable and agreed with the executed action while B was applicable
/// and disagreed. Absent edge == weight 0; self-edges are rejected.
class ArgumentPreferenceGraph {
 public:
  using Edge = std::pair<ArgumentId, ArgumentId>;

  ArgumentPreferenceGraph() = default;
  explicit ArgumentPreferenceGraph(std::set<ArgumentId> nodes);

  const std::set<ArgumentId>& nodes() const { return nodes_; }
  /// Only edges with positive weight, keyed (from, to).
  const std::map<Edge, std::int64_t>& edges() const { return weights_; }

  void increment_edge(const ArgumentId& from, const ArgumentId& to,
                      std::int64_t by = 1);
  void remove_edge(const ArgumentId& from, const ArgumentId& to);
  std::int64_t weight(const ArgumentId& from, const ArgumentId& to) const;
  std::int64_t max_weight() const;

  /// Pointwise addition over the same node set; increments commute, so
  /// partial graphs built from disjoint episode batches can be merged.
  void merge(const ArgumentPreferenceGraph& other);

  bool is_acyclic() const;

  bool operator==(const ArgumentPreferenceGraph&) const = default;

 private:
  friend ArgumentPreferenceGraph prune(const ArgumentPreferenceGraph&,
                                       std::int64_t);
  std::set<ArgumentId> nodes_;
  std::map<Edge, std::int64_t> weights_;
};

/// Keeps exactly the edges of weight >= p; nodes unchanged. Idempotent.
ArgumentPreferenceGraph prune(const ArgumentPreferenceGraph& apg,
                              std::int64_t p);

struct RemovedEdge {
  ArgumentId from;
  ArgumentId to;
  std::int64_t weight = 0;

  bool operator==(const RemovedEdge&) const = default;
};

struct AcyclicConversion {
  ArgumentPreferenceGraph dag;
  std::vector<RemovedEdge> removed;  // residual cycle edges, in removal order
};

/// Prunes below p, then breaks residual cycles one edge at a time: the cycle
/// is the first one depth-first search finds in lexicographic node order, the
/// removed edge is its minimum-weight edge, ties resolved by dropping the
/// lexicographically largest (from, to) pair. Deterministic.
AcyclicConversion convert_to_acyclic(const ArgumentPreferenceGraph& apg,
                                     std::int64_t p);

/// A total argument order, most-preferred first.
struct Ordering {
  std::vector<ArgumentId> ranked;

  bool operator==(const Ordering&) const = default;
};

/// Kahn's algorithm with the tie-break replaced by the default ordering:
/// among the in-degree-zero nodes, always extract the one the default ranks
/// highest. The result is the unique topological order consistent with that
/// rule. Throws CycleError on cyclic input and MissingNodeError when the
/// default does not cover the nodes.
Ordering topological_sort_with_default(const ArgumentPreferenceGraph& dag,
                                       const Ordering& default_ordering);

struct ExtractionConfig {
  std::int64_t pruning_threshold = 1;
  Ordering default_ordering;

  /// {"pruning_threshold": int, "default_ordering": [ids]}
  nlohmann::json to_json() const;
  static ExtractionConfig from_json(const nlohmann::json& j);
  static ExtractionConfig load(const std::filesystem::path& path);
};

/// Per-agent accumulation: for every (state, executed-action) pair of the
/// target agent, applicable arguments targeting that agent are split into
/// those agreeing with the executed action and those recommending something
/// else, and every (agreeing, disagreeing) edge is incremented.
ArgumentPreferenceGraph build_apg(const TrajectorySet& trajectories,
                                  const ArgumentCatalog& catalog,
                                  AgentIndex target);

/// Joint accumulation over all agents at once: an argument is in agreement
/// iff its own target's logged action matches its recommendation. Steps
/// missing any agent's action contribute only the arguments whose target has
/// one.
ArgumentPreferenceGraph build_apg_joint(const TrajectorySet& trajectories,
                                        const ArgumentCatalog& catalog);

/// values[ranked[k]] = N - k: rank 0 gets the largest value, distinct by
/// construction. Only the order is observable downstream.
ValueAssignment ordering_to_values(const Ordering& ordering);

struct ExtractionOutcome {
  Ordering ordering;
  ValueAssignment values;
  std::vector<RemovedEdge> cycle_edges_removed;

  /// {"ranked": [...], "values": {...}, "cycle_edges_removed": [[f,t,w]...]}
  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;
};

/// build_apg -> convert_to_acyclic -> topological sort -> rank values.
ExtractionOutcome extract_with_log(const TrajectorySet& trajectories,
                                   const ArgumentCatalog& catalog,
                                   AgentIndex target,
                                   const ExtractionConfig& config);
ExtractionOutcome extract_joint_with_log(const TrajectorySet& trajectories,
                                         const ArgumentCatalog& catalog,
                                         const ExtractionConfig& config);

Ordering extract_ordering(const TrajectorySet& trajectories,
                          const ArgumentCatalog& catalog, AgentIndex target,
                          const ExtractionConfig& config);

/// Catalog order as a default ordering.
Ordering catalog_order(const ArgumentCatalog& catalog);
/// Catalog order with the target agent's primary arguments first: the natural
/// default for per-agent extraction, keeping unconstrained cross-agent
/// arguments below every primary one.
Ordering primaries_first_order(const ArgumentCatalog& catalog,
                               AgentIndex target);
Ordering reversed(const Ordering& ordering);

}  // namespace vafex

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vafex/catalog.hpp"
#include "vafex/errors.hpp"
#include "vafex/state.hpp"

namespace vafex {

/// One logged decision point: the shared observation plus each agent's
/// executed action.
struct TimeStep {
  StateVector state;
  std::map<AgentIndex, std::string> actions;

  bool operator==(const TimeStep&) const = default;
};

struct Episode {
  std::int64_t id = 0;
  std::vector<TimeStep> steps;

  bool operator==(const Episode&) const = default;
};

/// Normalized trajectory data: the extraction input and the fidelity ground
/// truth. Immutable once built; validation happens at construction.
class TrajectorySet {
 public:
  TrajectorySet() = default;
  TrajectorySet(std::vector<Episode> episodes,
                std::vector<std::string> feature_names, int team_size);

  const std::vector<Episode>& episodes() const { return episodes_; }
  /// Sorted feature schema every step's state carries.
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  int team_size() const { return team_size_; }

  std::size_t total_steps() const;
  bool empty() const { return total_steps() == 0; }

  bool operator==(const TrajectorySet&) const = default;

 private:
  std::vector<Episode> episodes_;
  std::vector<std::string> feature_names_;
  int team_size_ = 0;
};

enum class TrajectoryFormat { kJsonl, kCsv };

TrajectoryFormat trajectory_format_from_name(const std::string& name);
/// Guesses from the extension: .jsonl/.json -> jsonl, .csv -> csv.
TrajectoryFormat trajectory_format_from_path(const std::filesystem::path& path);

struct RowIssue {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct LoadOptions {
  /// When set, action labels outside this alphabet become row errors.
  std::optional<std::vector<std::string>> action_alphabet;
};

struct LoadResult {
  TrajectorySet set;
  std::vector<RowIssue> row_errors;  // malformed rows, skipped
  std::vector<std::string> warnings;

  bool clean() const { return row_errors.empty(); }
};

/// Reads a trajectory file. Row-level problems are collected (with line
/// numbers) rather than aborting the load: data rows in = steps out +
/// row_errors. File-level problems (unreadable file, bad header) throw.
LoadResult load_trajectories(const std::filesystem::path& path,
                             TrajectoryFormat format,
                             const LoadOptions& options = {});

/// Writes a set so that load(write(set)) == set, field for field. JSONL gets
/// a leading schema record; CSV gets a header row. Numbers round-trip
/// exactly.
void write_trajectories(const TrajectorySet& set,
                        const std::filesystem::path& path,
                        TrajectoryFormat format);

/// Streams every (state, action-of-target) pair in episode/step order.
/// Throws DataGapError when a step lacks the target's action.
template <typename Fn>
void for_each_pair(const TrajectorySet& set, AgentIndex target, Fn&& fn) {
  if (target < 0 || target >= set.team_size()) {
    throw SchemaError("agent index " + std::to_string(target) +
                      " out of range for team size " +
                      std::to_string(set.team_size()));
  }
  for (const Episode& episode : set.episodes()) {
    for (std::size_t s = 0; s < episode.steps.size(); ++s) {
      const TimeStep& step = episode.steps[s];
      auto it = step.actions.find(target);
      if (it == step.actions.end()) {
        throw DataGapError(episode.id, s, target);
      }
      fn(step.state, it->second);
    }
  }
}

/// Batch form of for_each_pair.
std::vector<std::pair<StateVector, std::string>> collect_pairs(
    const TrajectorySet& set, AgentIndex target);

}  // namespace vafex

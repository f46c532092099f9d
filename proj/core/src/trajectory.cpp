#include "vafex/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vafex {

namespace {

constexpr const char* kActionPrefix = "action_";

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_int64(std::string_view text, std::int64_t& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

/// -1 when the key is not an action column.
int action_index_of(const std::string& key) {
  if (key.rfind(kActionPrefix, 0) != 0) return -1;
  std::string_view suffix(key);
  suffix.remove_prefix(std::string_view(kActionPrefix).size());
  if (suffix.empty()) return -1;
  std::int64_t idx = 0;
  if (!parse_int64(suffix, idx) || idx < 0) return -1;
  return static_cast<int>(idx);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

void require_csv_safe(const std::string& text, const char* what) {
  if (text.find_first_of(",\"\n\r") != std::string::npos) {
    throw SchemaError(std::string(what) + " '" + text +
                      "' cannot be written to csv");
  }
}

bool in_alphabet(const LoadOptions& options, const std::string& label) {
  if (!options.action_alphabet) return true;
  const auto& alphabet = *options.action_alphabet;
  return std::find(alphabet.begin(), alphabet.end(), label) != alphabet.end();
}

struct ParsedRow {
  std::int64_t episode = 0;
  StateVector state;
  std::map<AgentIndex, std::string> actions;
};

// Accumulates parsed rows into episodes; consecutive rows with the same
// episode id belong together.
class EpisodeAccumulator {
 public:
  void add(ParsedRow row) {
    if (episodes_.empty() || episodes_.back().id != row.episode) {
      episodes_.push_back(Episode{row.episode, {}});
    }
    episodes_.back().steps.push_back(
        TimeStep{std::move(row.state), std::move(row.actions)});
    max_agent_ = std::max(max_agent_,
                          episodes_.back().steps.back().actions.rbegin()->first);
  }

  std::vector<Episode> take() { return std::move(episodes_); }
  int max_agent() const { return max_agent_; }
  bool empty() const { return episodes_.empty(); }

 private:
  std::vector<Episode> episodes_;
  int max_agent_ = -1;
};

}  // namespace

TrajectorySet::TrajectorySet(std::vector<Episode> episodes,
                             std::vector<std::string> feature_names,
                             int team_size)
    : episodes_(std::move(episodes)),
      feature_names_(std::move(feature_names)),
      team_size_(team_size) {
  if (team_size_ < 1) throw SchemaError("team_size must be at least 1");
  std::sort(feature_names_.begin(), feature_names_.end());
  if (std::adjacent_find(feature_names_.begin(), feature_names_.end()) !=
      feature_names_.end()) {
    throw SchemaError("duplicate feature name in schema");
  }
  for (const Episode& episode : episodes_) {
    if (episode.id < 0) throw SchemaError("episode ids must be non-negative");
    for (const TimeStep& step : episode.steps) {
      if (step.state.size() != feature_names_.size()) {
        throw SchemaError("step state does not match the feature schema");
      }
      for (std::size_t i = 0; i < feature_names_.size(); ++i) {
        if (step.state.items()[i].first != feature_names_[i]) {
          throw SchemaError("step state does not match the feature schema");
        }
      }
      if (step.actions.empty()) {
        throw SchemaError("time step with no actions");
      }
      for (const auto& [agent, label] : step.actions) {
        if (agent < 0 || agent >= team_size_) {
          throw SchemaError("action for agent " + std::to_string(agent) +
                            " outside team size " + std::to_string(team_size_));
        }
        (void)label;
      }
    }
  }
}

std::size_t TrajectorySet::total_steps() const {
  std::size_t n = 0;
  for (const Episode& episode : episodes_) n += episode.steps.size();
  return n;
}

TrajectoryFormat trajectory_format_from_name(const std::string& name) {
  if (name == "jsonl") return TrajectoryFormat::kJsonl;
  if (name == "csv") return TrajectoryFormat::kCsv;
  throw SchemaError("unknown trajectory format: " + name);
}

TrajectoryFormat trajectory_format_from_path(
    const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return TrajectoryFormat::kCsv;
  if (ext == ".jsonl" || ext == ".json") return TrajectoryFormat::kJsonl;
  throw SchemaError("cannot infer trajectory format from path: " +
                    path.string());
}

namespace {

LoadResult load_jsonl(std::istream& in, const LoadOptions& options) {
  LoadResult result;
  EpisodeAccumulator acc;
  std::optional<std::vector<std::string>> schema;  // sorted feature names
  std::optional<int> declared_team_size;

  std::string line;
  std::size_t line_no = 0;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      ++data_rows;
      result.row_errors.push_back({line_no, e.what()});
      continue;
    }
    if (!j.is_object()) {
      ++data_rows;
      result.row_errors.push_back({line_no, "record is not an object"});
      continue;
    }

    if (j.contains("schema") && j.at("schema").is_object()) {
      const auto& s = j.at("schema");
      try {
        schema = s.at("features").get<std::vector<std::string>>();
        std::sort(schema->begin(), schema->end());
        declared_team_size = s.at("team_size").get<int>();
      } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid schema record: ") + e.what());
      }
      continue;
    }

    ++data_rows;
    ParsedRow row;
    std::vector<std::string> features_seen;
    std::string error;
    for (auto it = j.begin(); it != j.end() && error.empty(); ++it) {
      const std::string& key = it.key();
      if (key == "episode") {
        if (!it.value().is_number_integer() || it.value().get<std::int64_t>() < 0) {
          error = "field 'episode' must be a non-negative integer";
        } else {
          row.episode = it.value().get<std::int64_t>();
        }
      } else if (key == "step") {
        if (!it.value().is_number_integer()) {
          error = "field 'step' must be an integer";
        }
      } else if (int agent = action_index_of(key); agent >= 0) {
        if (!it.value().is_string()) {
          error = "field '" + key + "' must be a string";
        } else if (declared_team_size && agent >= *declared_team_size) {
          error = "action index " + std::to_string(agent) +
                  " outside declared team size";
        } else {
          std::string label = it.value().get<std::string>();
          if (!in_alphabet(options, label)) {
            error = "action label '" + label + "' not in alphabet";
          } else {
            row.actions[agent] = std::move(label);
          }
        }
      } else if (it.value().is_number()) {
        features_seen.push_back(key);
        row.state.set(key, it.value().get<double>());
      } else {
        error = "unexpected non-numeric field '" + key + "'";
      }
    }
    if (error.empty() && !j.contains("episode")) {
      error = "missing 'episode' field";
    }
    if (error.empty() && row.actions.empty()) {
      error = "record has no action fields";
    }
    if (error.empty()) {
      if (!schema) {
        std::sort(features_seen.begin(), features_seen.end());
        schema = features_seen;
      }
      for (const std::string& name : *schema) {
        if (!row.state.has(name)) {
          error = "missing feature '" + name + "'";
          break;
        }
      }
      if (error.empty() && row.state.size() != schema->size()) {
        for (const auto& [name, value] : row.state.items()) {
          if (!std::binary_search(schema->begin(), schema->end(), name)) {
            error = "unexpected feature '" + name + "'";
            break;
          }
        }
      }
    }
    if (!error.empty()) {
      result.row_errors.push_back({line_no, error});
      continue;
    }
    acc.add(std::move(row));
  }

  if (data_rows == 0) {
    result.warnings.push_back("empty trajectory file");
  }
  if (!acc.empty()) {
    int team_size = declared_team_size.value_or(acc.max_agent() + 1);
    result.set = TrajectorySet(acc.take(), *schema, team_size);
  } else if (schema && declared_team_size) {
    result.set = TrajectorySet({}, *schema, *declared_team_size);
  }
  return result;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.emplace_back(trim(std::string_view(line).substr(start)));
      break;
    }
    out.emplace_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

struct CsvHeader {
  int episode_col = -1;
  int step_col = -1;
  std::vector<std::pair<int, int>> action_cols;   // (column, agent)
  std::vector<std::pair<int, std::string>> feature_cols;
  std::size_t column_count = 0;
};

CsvHeader parse_csv_header(const std::string& line) {
  CsvHeader header;
  std::vector<std::string> cols = split_csv(line);
  header.column_count = cols.size();
  std::vector<int> action_agents;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::string& name = cols[c];
    if (name == "episode") {
      if (header.episode_col >= 0) throw SchemaError("duplicate 'episode' column");
      header.episode_col = static_cast<int>(c);
    } else if (name == "step") {
      if (header.step_col >= 0) throw SchemaError("duplicate 'step' column");
      header.step_col = static_cast<int>(c);
    } else if (int agent = action_index_of(name); agent >= 0) {
      header.action_cols.emplace_back(static_cast<int>(c), agent);
      action_agents.push_back(agent);
    } else if (name.empty()) {
      throw SchemaError("empty column name in csv header");
    } else {
      header.feature_cols.emplace_back(static_cast<int>(c), name);
    }
  }
  if (header.episode_col < 0) throw SchemaError("csv header lacks an 'episode' column");
  if (action_agents.empty()) throw SchemaError("csv header lacks action columns");
  std::sort(action_agents.begin(), action_agents.end());
  for (std::size_t i = 0; i < action_agents.size(); ++i) {
    if (action_agents[i] != static_cast<int>(i)) {
      throw SchemaError("csv action columns must be contiguous from action_0");
    }
  }
  std::vector<std::string> names;
  for (const auto& [col, name] : header.feature_cols) names.push_back(name);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw SchemaError("duplicate feature column in csv header");
  }
  return header;
}

LoadResult load_csv(std::istream& in, const LoadOptions& options) {
  LoadResult result;
  std::string line;
  if (!std::getline(in, line)) {
    result.warnings.push_back("empty trajectory file");
    return result;
  }
  CsvHeader header = parse_csv_header(line);
  std::vector<std::string> schema;
  for (const auto& [col, name] : header.feature_cols) schema.push_back(name);
  std::sort(schema.begin(), schema.end());
  const int team_size = static_cast<int>(header.action_cols.size());

  EpisodeAccumulator acc;
  std::size_t line_no = 1;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++data_rows;
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.column_count) {
      result.row_errors.push_back(
          {line_no, "expected " + std::to_string(header.column_count) +
                        " cells, found " + std::to_string(cells.size())});
      continue;
    }
    ParsedRow row;
    std::string error;
    if (!parse_int64(cells[header.episode_col], row.episode) ||
        row.episode < 0) {
      error = "invalid 'episode' value '" + cells[header.episode_col] + "'";
    }
    if (error.empty() && header.step_col >= 0 &&
        !cells[header.step_col].empty()) {
      std::int64_t step = 0;
      if (!parse_int64(cells[header.step_col], step)) {
        error = "invalid 'step' value '" + cells[header.step_col] + "'";
      }
    }
    for (const auto& [col, agent] : header.action_cols) {
      if (!error.empty()) break;
      const std::string& label = cells[col];
      if (label.empty()) continue;  // data gap for this agent
      if (!in_alphabet(options, label)) {
        error = "action label '" + label + "' not in alphabet";
      } else {
        row.actions[agent] = label;
      }
    }
    for (const auto& [col, name] : header.feature_cols) {
      if (!error.empty()) break;
      double value = 0;
      if (!parse_double(cells[col], value)) {
        error = "invalid value '" + cells[col] + "' for feature '" + name + "'";
      } else {
        row.state.set(name, value);
      }
    }
    if (error.empty() && row.actions.empty()) {
      error = "record has no action fields";
    }
    if (!error.empty()) {
      result.row_errors.push_back({line_no, error});
      continue;
    }
    acc.add(std::move(row));
  }

  if (data_rows == 0) {
    result.warnings.push_back("empty trajectory file");
  }
  if (!acc.empty()) {
    result.set = TrajectorySet(acc.take(), schema, team_size);
  } else {
    result.set = TrajectorySet({}, schema, team_size);
  }
  return result;
}

}  // namespace

LoadResult load_trajectories(const std::filesystem::path& path,
                             TrajectoryFormat format,
                             const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read trajectory file: " + path.string());
  return format == TrajectoryFormat::kJsonl ? load_jsonl(in, options)
                                            : load_csv(in, options);
}

void write_trajectories(const TrajectorySet& set,
                        const std::filesystem::path& path,
                        TrajectoryFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trajectory file: " + path.string());

  if (format == TrajectoryFormat::kJsonl) {
    nlohmann::json schema = {{"schema",
                              {{"features", set.feature_names()},
                               {"team_size", set.team_size()}}}};
    out << schema.dump() << '\n';
    for (const Episode& episode : set.episodes()) {
      for (std::size_t s = 0; s < episode.steps.size(); ++s) {
        const TimeStep& step = episode.steps[s];
        nlohmann::json j;
        j["episode"] = episode.id;
        j["step"] = s;
        for (const auto& [agent, label] : step.actions) {
          j[kActionPrefix + std::to_string(agent)] = label;
        }
        for (const auto& [name, value] : step.state.items()) {
          j[name] = value;
        }
        out << j.dump() << '\n';
      }
    }
  } else {
    for (const std::string& name : set.feature_names()) {
      require_csv_safe(name, "feature name");
    }
    out << "episode,step";
    for (int a = 0; a < set.team_size(); ++a) out << ",action_" << a;
    for (const std::string& name : set.feature_names()) out << ',' << name;
    out << '\n';
    for (const Episode& episode : set.episodes()) {
      for (std::size_t s = 0; s < episode.steps.size(); ++s) {
        const TimeStep& step = episode.steps[s];
        out << episode.id << ',' << s;
        for (int a = 0; a < set.team_size(); ++a) {
          out << ',';
          auto it = step.actions.find(a);
          if (it != step.actions.end()) {
            require_csv_safe(it->second, "action label");
            out << it->second;
          }
        }
        for (const auto& [name, value] : step.state.items()) {
          out << ',' << format_double(value);
        }
        out << '\n';
      }
    }
  }
  if (!out) throw IoError("failed writing trajectory file: " + path.string());
}

std::vector<std::pair<StateVector, std::string>> collect_pairs(
    const TrajectorySet& set, AgentIndex target) {
  std::vector<std::pair<StateVector, std::string>> out;
  out.reserve(set.total_steps());
  for_each_pair(set, target, [&](const StateVector& state,
                                 const std::string& action) {
    out.emplace_back(state, action);
  });
  return out;
}

}  // namespace vafex

#include "vafex/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <sstream>

#include "vafex/errors.hpp"
#include "vafex/rng.hpp"

namespace vafex {

nlohmann::json FidelityReport::to_json() const {
  nlohmann::json agents = nlohmann::json::object();
  for (const auto& [agent, score] : per_agent) {
    agents[std::to_string(agent)] = {{"fidelity", score},
                                     {"steps", step_counts.at(agent)}};
  }
  return {{"per_agent", std::move(agents)}};
}

FidelityReport fidelity(const TeamModel& team,
                        const TrajectorySet& trajectories) {
  if (trajectories.empty()) {
    throw NoDataError("fidelity needs at least one trajectory step");
  }
  if (trajectories.team_size() != team.team_size()) {
    throw SchemaError("trajectory team size " +
                      std::to_string(trajectories.team_size()) +
                      " does not match model team size " +
                      std::to_string(team.team_size()));
  }

  std::map<AgentIndex, std::int64_t> matches;
  std::map<AgentIndex, std::int64_t> counts;
  for (const Episode& episode : trajectories.episodes()) {
    for (const TimeStep& step : episode.steps) {
      std::map<AgentIndex, std::string> joint =
          team.select_joint_action(step.state);
      for (const auto& [agent, logged] : step.actions) {
        ++counts[agent];
        if (joint.at(agent) == logged) ++matches[agent];
      }
    }
  }

  FidelityReport report;
  for (const auto& [agent, count] : counts) {
    report.per_agent[agent] =
        static_cast<double>(matches[agent]) / static_cast<double>(count);
    report.step_counts[agent] = count;
  }
  return report;
}

const std::string& PolicyGrid::cell(int row, int col) const {
  return cells.at(static_cast<std::size_t>(row) * cols + col);
}

PolicyGrid policy_grid(const AAAgentModel& agent, int rows, int cols,
                       const GridRanges& ranges) {
  if (rows < 1 || cols < 1) throw SchemaError("grid resolution must be >= 1x1");
  if (ranges.pos_lo >= ranges.pos_hi || ranges.vel_lo >= ranges.vel_hi) {
    throw SchemaError("grid ranges must be non-empty");
  }
  if (ranges.pos_lo < kMcPositionMin || ranges.pos_hi > kMcPositionMax ||
      ranges.vel_lo < kMcVelocityMin || ranges.vel_hi > kMcVelocityMax) {
    throw SchemaError("grid ranges outside the state space");
  }

  PolicyGrid grid;
  grid.rows = rows;
  grid.cols = cols;
  grid.ranges = ranges;
  grid.cells.reserve(static_cast<std::size_t>(rows) * cols);
  const double pos_width = (ranges.pos_hi - ranges.pos_lo) / rows;
  const double vel_width = (ranges.vel_hi - ranges.vel_lo) / cols;
  for (int r = 0; r < rows; ++r) {
    const double position = ranges.pos_lo + pos_width * (r + 0.5);
    for (int c = 0; c < cols; ++c) {
      const double velocity = ranges.vel_lo + vel_width * (c + 0.5);
      grid.cells.push_back(agent.select_action(
          StateVector{{"position", position}, {"velocity", velocity}}));
    }
  }
  return grid;
}

std::string policy_grid_csv(const PolicyGrid& grid) {
  std::ostringstream out;
  out << "position_bin,velocity_bin,action\n";
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      out << r << ',' << c << ',' << grid.cell(r, c) << '\n';
    }
  }
  return out.str();
}

PolicyGrid policy_grid_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("position_bin,velocity_bin,action", 0) != 0) {
    throw SchemaError("policy grid csv must start with the standard header");
  }
  std::map<std::pair<int, int>, std::string> cells;
  int rows = 0, cols = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string pos_text, vel_text, action;
    if (!std::getline(row, pos_text, ',') || !std::getline(row, vel_text, ',') ||
        !std::getline(row, action)) {
      throw ParseError(line_no, "expected position_bin,velocity_bin,action");
    }
    int r = 0, c = 0;
    auto parse = [&](const std::string& text, int& out_value) {
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                       out_value);
      return ec == std::errc{} && ptr == text.data() + text.size();
    };
    if (!parse(pos_text, r) || !parse(vel_text, c) || r < 0 || c < 0) {
      throw ParseError(line_no, "invalid bin index");
    }
    cells[{r, c}] = action;
    rows = std::max(rows, r + 1);
    cols = std::max(cols, c + 1);
  }
  if (cells.size() != static_cast<std::size_t>(rows) * cols) {
    throw SchemaError("policy grid csv does not cover a full grid");
  }
  PolicyGrid grid;
  grid.rows = rows;
  grid.cols = cols;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) grid.cells.push_back(cells.at({r, c}));
  }
  return grid;
}

std::string policy_grid_pgm(const PolicyGrid& grid,
                            const std::vector<std::string>& action_alphabet) {
  std::vector<std::string> alphabet = action_alphabet;
  std::sort(alphabet.begin(), alphabet.end());
  const int n = static_cast<int>(alphabet.size());
  auto gray = [&](const std::string& action) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), action);
    if (it == alphabet.end() || *it != action) {
      throw SchemaError("grid action '" + action + "' not in alphabet");
    }
    const int idx = static_cast<int>(it - alphabet.begin());
    return n <= 1 ? 0 : (255 * idx) / (n - 1);
  };

  std::ostringstream out;
  out << "P2\n" << grid.cols << ' ' << grid.rows << "\n255\n";
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (c > 0) out << ' ';
      out << gray(grid.cell(r, c));
    }
    out << '\n';
  }
  return out.str();
}

int policy_grid_diff(const PolicyGrid& a, const PolicyGrid& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw SchemaError("policy grids have different shapes");
  }
  int mismatches = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    if (a.cells[i] != b.cells[i]) ++mismatches;
  }
  return mismatches;
}

nlohmann::json InspectionReport::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [id, value] : top) {
    entries.push_back({{"id", id}, {"value", value}});
  }
  return {{"agent", agent}, {"top", std::move(entries)}};
}

InspectionReport inspect_top_k(const AAAgentModel& agent, int k) {
  if (k < 1) throw SchemaError("top-k requires k >= 1");
  InspectionReport report;
  report.agent = agent.self();
  for (const auto& arg : agent.catalog().arguments()) {
    if (arg.target == agent.self()) {
      report.top.emplace_back(arg.id, agent.values().at(arg.id));
    }
  }
  std::sort(report.top.begin(), report.top.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  if (static_cast<int>(report.top.size()) > k) report.top.resize(k);
  return report;
}

std::string inspection_text(const InspectionReport& report) {
  std::size_t width = 8;
  for (const auto& [id, value] : report.top) width = std::max(width, id.size());
  std::ostringstream out;
  out << "agent " << report.agent << " top primary arguments\n";
  for (const auto& [id, value] : report.top) {
    out << "  " << id << std::string(width - id.size() + 2, ' ') << value
        << '\n';
  }
  return out.str();
}

namespace {

struct LatencyProbe {
  std::vector<double> samples_ms;

  JointPolicy wrap(const JointPolicy& inner) {
    return [this, &inner](const StateVector& state) {
      const auto t0 = std::chrono::steady_clock::now();
      auto result = inner(state);
      const auto t1 = std::chrono::steady_clock::now();
      samples_ms.push_back(
          std::chrono::duration<double, std::milli>(t1 - t0).count());
      return result;
    };
  }
};

template <typename Runner>
BenchmarkReport run_benchmark(const JointPolicy& policy, int episodes,
                              std::uint64_t seed, const Runner& runner) {
  if (episodes < 1) throw SchemaError("episodes must be at least 1");

  // Warm-up on a derived seed stream, discarded.
  runner(policy, RunOptions{10, derive_seed(seed, 0x7761726d), 1});

  LatencyProbe probe;
  JointPolicy timed = probe.wrap(policy);
  BenchmarkReport report;
  report.stats = runner(timed, RunOptions{episodes, seed, 1});
  report.decisions = static_cast<std::int64_t>(probe.samples_ms.size());
  if (report.decisions > 0) {
    double sum = 0;
    for (double s : probe.samples_ms) sum += s;
    report.decision_mean_ms = sum / static_cast<double>(report.decisions);
    double var = 0;
    for (double s : probe.samples_ms) {
      var += (s - report.decision_mean_ms) * (s - report.decision_mean_ms);
    }
    report.decision_std_ms =
        std::sqrt(var / static_cast<double>(report.decisions));
  }
  return report;
}

}  // namespace

BenchmarkReport benchmark_mountain_car(const JointPolicy& policy,
                                       const MountainCarParams& params,
                                       int episodes, std::uint64_t seed) {
  return run_benchmark(policy, episodes, seed,
                       [&params](const JointPolicy& p, const RunOptions& o) {
                         return run_mountain_car_episodes(p, params, o);
                       });
}

BenchmarkReport benchmark_takeaway(const JointPolicy& policy,
                                   const TakeawayParams& params, int episodes,
                                   std::uint64_t seed) {
  return run_benchmark(policy, episodes, seed,
                       [&params](const JointPolicy& p, const RunOptions& o) {
                         return run_takeaway_replay(p, params, o);
                       });
}

}  // namespace vafex

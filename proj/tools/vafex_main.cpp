// vafex command line: reproducible pipelines over the extraction library.
//   vafex gen      run a policy in an environment and log trajectories
//   vafex extract  derive agent value orderings from logged trajectories
//   vafex eval     fidelity / bench / inspect / grid on extracted models
//
// Every command is deterministic given (inputs, config, seed); all outputs
// land in a run directory together with a manifest of input/output
// fingerprints. Wall-clock measurements go to stdout only, never into files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vafex/episode_runner.hpp"
#include "vafex/errors.hpp"
#include "vafex/evaluation.hpp"
#include "vafex/extraction.hpp"
#include "vafex/file_hash.hpp"
#include "vafex/mountain_car.hpp"
#include "vafex/rng.hpp"
#include "vafex/takeaway.hpp"
#include "vafex/team.hpp"
#include "vafex/trajectory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  vafex::MountainCarParams mc;
  vafex::GridSpec grid;
  vafex::TakeawayParams takeaway;
};

double number_field(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int int_field(const json& j, const char* key, int fallback) {
  return j.contains(key) ? j.at(key).get<int>() : fallback;
}

void parse_run_config(const json& j, RunConfig& config) {
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("mc")) {
    const json& mc = j.at("mc");
    config.mc.force = number_field(mc, "force", config.mc.force);
    config.mc.gravity_scale =
        number_field(mc, "gravity_scale", config.mc.gravity_scale);
    config.mc.goal_position =
        number_field(mc, "goal_position", config.mc.goal_position);
    config.mc.max_steps = int_field(mc, "max_steps", config.mc.max_steps);
    config.grid.position_bins =
        int_field(mc, "position_bins", config.grid.position_bins);
    config.grid.velocity_bins =
        int_field(mc, "velocity_bins", config.grid.velocity_bins);
  }
  if (j.contains("takeaway")) {
    const json& tk = j.at("takeaway");
    vafex::TakeawayParams& t = config.takeaway;
    t.takers = int_field(tk, "takers", t.takers);
    t.keepers = int_field(tk, "keepers", t.keepers);
    t.field_width = number_field(tk, "field_width", t.field_width);
    t.field_height = number_field(tk, "field_height", t.field_height);
    t.open_threshold = number_field(tk, "open_threshold", t.open_threshold);
    t.far_threshold = number_field(tk, "far_threshold", t.far_threshold);
    t.steps_per_episode =
        int_field(tk, "steps_per_episode", t.steps_per_episode);
  }
}

RunConfig load_run_config(const std::string& path) {
  RunConfig config;
  if (path.empty()) return config;
  std::ifstream in(path);
  if (!in) throw vafex::IoError("cannot read config file: " + path);
  json j;
  try {
    in >> j;
    parse_run_config(j, config);
  } catch (const json::exception& e) {
    throw vafex::SchemaError("invalid config file " + path + ": " + e.what());
  }
  return config;
}

// Manifest of one run: what went in, what came out, byte fingerprints of
// both. Lives next to the outputs.
class Manifest {
 public:
  Manifest(std::string command, fs::path out_dir)
      : command_(std::move(command)), out_dir_(std::move(out_dir)) {
    fs::create_directories(out_dir_);
  }

  const fs::path& dir() const { return out_dir_; }
  fs::path path_for(const std::string& name) const { return out_dir_ / name; }

  void add_input(const fs::path& path) {
    inputs_[path.string()] = vafex::file_fingerprint(path);
  }
  // Outputs are keyed relative to the run directory so a rerun into another
  // directory produces a byte-identical manifest.
  void add_output(const fs::path& path) {
    outputs_[path.lexically_relative(out_dir_).string()] =
        vafex::file_fingerprint(path);
  }
  void set_parameters(json parameters) { parameters_ = std::move(parameters); }

  void write() const {
    json j = {{"command", command_},
              {"inputs", inputs_},
              {"outputs", outputs_},
              {"parameters", parameters_}};
    std::ofstream out(out_dir_ / "manifest.json");
    if (!out) {
      throw vafex::IoError("cannot write manifest in " + out_dir_.string());
    }
    out << j.dump(2) << '\n';
  }

 private:
  std::string command_;
  fs::path out_dir_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
  json parameters_;
};

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw vafex::IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void report_load_issues(const vafex::LoadResult& result) {
  for (const std::string& warning : result.warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
  for (const vafex::RowIssue& issue : result.row_errors) {
    std::cerr << "warning: skipped row at line " << issue.line << ": "
              << issue.reason << '\n';
  }
}

vafex::TrajectorySet load_trajectory_input(const fs::path& path,
                                           const vafex::ArgumentCatalog* catalog) {
  vafex::LoadOptions options;
  if (catalog) options.action_alphabet = catalog->action_alphabet();
  vafex::LoadResult result = vafex::load_trajectories(
      path, vafex::trajectory_format_from_path(path), options);
  report_load_issues(result);
  if (!result.row_errors.empty() && result.set.empty()) {
    throw vafex::SchemaError("no valid rows in " + path.string());
  }
  return std::move(result.set);
}

json stats_json(const vafex::EpisodeStats& stats) {
  // Only seed-deterministic fields; wall-clock numbers stay on stdout.
  return {{"episodes", stats.episodes},
          {"mean_steps", stats.mean_steps},
          {"std_steps", stats.std_steps},
          {"success_rate", stats.success_rate}};
}

void print_stats(const vafex::EpisodeStats& stats) {
  std::cout << "episodes:        " << stats.episodes << '\n'
            << "mean steps:      " << stats.mean_steps << " +/- "
            << stats.std_steps << '\n'
            << "success rate:    " << stats.success_rate << '\n'
            << "episode wall ms: " << stats.mean_wall_time_s * 1e3 << " +/- "
            << stats.std_wall_time_s * 1e3 << '\n';
}

std::string default_action_for(const vafex::ArgumentCatalog& catalog,
                               const std::string& requested) {
  if (!requested.empty()) {
    if (!catalog.action_in_alphabet(requested)) {
      throw UsageError("default action '" + requested +
                       "' is not in the catalog alphabet");
    }
    return requested;
  }
  for (const char* candidate : {vafex::kNoPush, "tackle"}) {
    if (catalog.action_in_alphabet(candidate)) return candidate;
  }
  return catalog.action_alphabet().front();
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& flag_seed,
                           const RunConfig& config) {
  if (flag_seed) return *flag_seed;
  if (config.seed) return *config.seed;
  throw UsageError("a seed is required (--seed or config file)");
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string env;
  std::string policy = "scripted";
  int episodes = 0;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "jsonl";
  std::string config_path;
  std::vector<std::string> model_paths;
  int threads = 1;
};

// Ground-truth value orderings are seed-shuffled permutations of the catalog.
vafex::ValueAssignment random_values(const vafex::ArgumentCatalog& catalog,
                                     std::uint64_t seed) {
  std::vector<vafex::ArgumentId> ids = catalog.ids();
  std::mt19937_64 rng(seed);
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng() % i]);
  }
  return vafex::ordering_to_values(vafex::Ordering{std::move(ids)});
}

int cmd_gen(const GenArgs& args) {
  if (args.episodes < 1) throw UsageError("--episodes must be at least 1");
  RunConfig config = load_run_config(args.config_path);
  const std::uint64_t seed = require_seed(args.seed, config);
  const vafex::TrajectoryFormat format =
      vafex::trajectory_format_from_name(args.format);

  Manifest manifest("gen", args.out_dir);
  if (!args.config_path.empty()) manifest.add_input(args.config_path);

  std::optional<vafex::TeamModel> team;
  vafex::JointPolicy policy;
  std::shared_ptr<const vafex::ArgumentCatalog> catalog;
  const fs::path catalog_path = manifest.path_for("catalog.json");

  if (args.env == "mountain_car") {
    catalog = std::make_shared<const vafex::ArgumentCatalog>(
        vafex::generate_mc_catalog(config.grid));
  } else if (args.env == "takeaway_synth") {
    catalog = std::make_shared<const vafex::ArgumentCatalog>(
        vafex::generate_takeaway_catalog(config.takeaway));
  } else {
    throw UsageError("unknown environment: " + args.env);
  }
  catalog->save(catalog_path);

  if (args.policy == "scripted") {
    if (args.env != "mountain_car") {
      throw UsageError("the scripted policy only exists for mountain_car");
    }
    policy = vafex::scripted_mc_joint_policy();
  } else if (args.policy == "ground_truth") {
    if (args.env == "mountain_car") {
      std::vector<vafex::AAAgentModel> members;
      members.emplace_back(catalog,
                           random_values(*catalog, vafex::derive_seed(seed, 0x6774)),
                           0, vafex::kNoPush);
      team = vafex::TeamModel::decentralized(std::move(members));
    } else {
      team = vafex::make_ground_truth_takeaway_team(
          catalog, vafex::derive_seed(seed, 0x6774));
    }
    for (const vafex::AAAgentModel& member : team->members()) {
      const fs::path path = manifest.path_for(
          "gt_model_agent" + std::to_string(member.self()) + ".json");
      member.save(path, "catalog.json");
      manifest.add_output(path);
    }
    policy = vafex::policy_from_team(*team);
  } else if (args.policy == "model") {
    if (args.model_paths.empty()) {
      throw UsageError("--policy model requires --model files");
    }
    std::vector<fs::path> paths(args.model_paths.begin(),
                                args.model_paths.end());
    for (const fs::path& p : paths) manifest.add_input(p);
    team = vafex::load_team(paths);
    policy = vafex::policy_from_team(*team);
  } else {
    throw UsageError("unknown policy: " + args.policy);
  }

  vafex::TrajectorySet log;
  const vafex::RunOptions options{args.episodes, seed, args.threads};
  vafex::EpisodeStats stats;
  if (args.env == "mountain_car") {
    stats = vafex::run_mountain_car_episodes(policy, config.mc, options, &log);
  } else {
    stats = vafex::run_takeaway_replay(policy, config.takeaway, options, &log);
  }

  const fs::path traj_path = manifest.path_for(
      format == vafex::TrajectoryFormat::kCsv ? "trajectories.csv"
                                              : "trajectories.jsonl");
  vafex::write_trajectories(log, traj_path, format);
  const fs::path stats_path = manifest.path_for("stats.json");
  write_json_file(stats_path, stats_json(stats));

  manifest.add_output(catalog_path);
  manifest.add_output(traj_path);
  manifest.add_output(stats_path);
  manifest.set_parameters({{"env", args.env},
                           {"policy", args.policy},
                           {"episodes", args.episodes},
                           {"seed", seed},
                           {"format", args.format}});
  manifest.write();

  print_stats(stats);
  std::cout << "wrote " << traj_path.string() << " (" << log.total_steps()
            << " steps)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractArgs {
  std::string trajectories;
  std::string catalog;
  std::string out_dir;
  std::string agent = "all";
  std::optional<std::int64_t> pruning;
  std::string default_ordering = "primaries_first";
  std::string extraction_config;
  std::string default_action;
  bool joint = false;
  std::string config_path;
};

vafex::Ordering resolve_default_ordering(const std::string& name,
                                         const vafex::ArgumentCatalog& catalog,
                                         vafex::AgentIndex target) {
  if (name == "catalog") return vafex::catalog_order(catalog);
  if (name == "reverse") return vafex::reversed(vafex::catalog_order(catalog));
  if (name == "primaries_first") {
    return vafex::primaries_first_order(catalog, target);
  }
  // Anything else is a file holding a JSON array of argument ids.
  std::ifstream in(name);
  if (!in) throw vafex::IoError("cannot read default ordering file: " + name);
  try {
    json j;
    in >> j;
    return vafex::Ordering{j.get<std::vector<vafex::ArgumentId>>()};
  } catch (const json::exception& e) {
    throw vafex::SchemaError("invalid ordering file " + name + ": " + e.what());
  }
}

int cmd_extract(const ExtractArgs& args) {
  Manifest manifest("extract", args.out_dir);
  manifest.add_input(args.trajectories);
  manifest.add_input(args.catalog);

  auto catalog = std::make_shared<const vafex::ArgumentCatalog>(
      vafex::ArgumentCatalog::load(args.catalog));
  vafex::TrajectorySet trajectories =
      load_trajectory_input(args.trajectories, catalog.get());
  if (trajectories.empty()) {
    std::cerr << "warning: no trajectory steps, extraction falls back to the "
                 "default ordering\n";
    trajectories = vafex::TrajectorySet({}, {}, catalog->team_size());
  }

  // The run directory is self-contained: models reference a local copy of
  // the catalog.
  const fs::path catalog_copy = manifest.path_for("catalog.json");
  if (fs::weakly_canonical(catalog_copy) !=
      fs::weakly_canonical(fs::path(args.catalog))) {
    fs::copy_file(args.catalog, catalog_copy,
                  fs::copy_options::overwrite_existing);
  }
  manifest.add_output(catalog_copy);

  std::vector<vafex::AgentIndex> targets;
  if (args.agent == "all") {
    for (int i = 0; i < catalog->team_size(); ++i) targets.push_back(i);
  } else {
    try {
      targets.push_back(std::stoi(args.agent));
    } catch (const std::exception&) {
      throw UsageError("--agent expects an index or 'all'");
    }
    if (targets.back() < 0 || targets.back() >= catalog->team_size()) {
      throw UsageError("agent index out of range for this catalog");
    }
  }

  std::optional<vafex::ExtractionConfig> file_config;
  if (!args.extraction_config.empty()) {
    manifest.add_input(args.extraction_config);
    file_config = vafex::ExtractionConfig::load(args.extraction_config);
  }

  const std::string action_fallback =
      default_action_for(*catalog, args.default_action);

  json extracted = json::array();
  std::optional<vafex::ExtractionOutcome> joint_outcome;
  for (vafex::AgentIndex target : targets) {
    vafex::ExtractionConfig config;
    if (file_config) {
      config = *file_config;
    } else {
      config.default_ordering =
          resolve_default_ordering(args.default_ordering, *catalog, target);
    }
    if (args.pruning) config.pruning_threshold = *args.pruning;
    if (config.pruning_threshold < 0) {
      throw UsageError("--pruning must be non-negative");
    }

    vafex::ExtractionOutcome outcome;
    if (args.joint) {
      if (!joint_outcome) {
        joint_outcome =
            vafex::extract_joint_with_log(trajectories, *catalog, config);
      }
      outcome = *joint_outcome;
    } else {
      outcome = vafex::extract_with_log(trajectories, *catalog, target, config);
    }

    const std::string suffix = std::to_string(target) + ".json";
    const fs::path ordering_path = manifest.path_for("ordering_agent" + suffix);
    outcome.save(ordering_path);
    manifest.add_output(ordering_path);

    vafex::AAAgentModel model(catalog, outcome.values, target, action_fallback);
    const fs::path model_path = manifest.path_for("model_agent" + suffix);
    model.save(model_path, "catalog.json");
    manifest.add_output(model_path);

    extracted.push_back({{"agent", target},
                         {"model", model_path.filename().string()},
                         {"cycle_edges_removed",
                          static_cast<std::int64_t>(
                              outcome.cycle_edges_removed.size())}});
    std::cout << "agent " << target << ": wrote " << model_path.string()
              << " (" << outcome.cycle_edges_removed.size()
              << " cycle edges removed)\n";
  }

  manifest.set_parameters(
      {{"agents", extracted},
       {"joint", args.joint},
       {"default_ordering", file_config ? "<config file>" : args.default_ordering},
       {"pruning_threshold",
        args.pruning ? json(*args.pruning)
                     : (file_config ? json(file_config->pruning_threshold)
                                    : json(1))}});
  manifest.write();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalCommonArgs {
  std::vector<std::string> model_paths;
  bool centralized = false;
  std::string out_dir;
};

vafex::TeamModel load_eval_team(const EvalCommonArgs& args,
                                Manifest* manifest) {
  if (args.model_paths.empty()) throw UsageError("--model is required");
  std::vector<fs::path> paths(args.model_paths.begin(), args.model_paths.end());
  if (manifest) {
    for (const fs::path& p : paths) manifest->add_input(p);
  }
  return vafex::load_team(paths, args.centralized
                                     ? vafex::TeamModel::Mode::kCentralized
                                     : vafex::TeamModel::Mode::kDecentralized);
}

int cmd_eval_fidelity(const EvalCommonArgs& common,
                      const std::string& trajectories_path,
                      const std::string& holdout_path) {
  Manifest manifest("eval-fidelity", common.out_dir);
  vafex::TeamModel team = load_eval_team(common, &manifest);

  // --holdout switches the scored data set; the training file stays recorded
  // as an input for provenance.
  const std::string scored_path =
      holdout_path.empty() ? trajectories_path : holdout_path;
  if (scored_path.empty()) throw UsageError("--trajectories is required");
  manifest.add_input(scored_path);
  if (!holdout_path.empty() && !trajectories_path.empty()) {
    manifest.add_input(trajectories_path);
  }

  vafex::TrajectorySet trajectories =
      load_trajectory_input(scored_path, &team.catalog());
  vafex::FidelityReport report = vafex::fidelity(team, trajectories);

  json j = report.to_json();
  j["mode"] = holdout_path.empty() ? "as_given" : "holdout";
  const fs::path report_path = manifest.path_for("fidelity.json");
  write_json_file(report_path, j);
  manifest.add_output(report_path);
  manifest.set_parameters({{"scored", scored_path},
                           {"mode", j["mode"]},
                           {"centralized", common.centralized}});
  manifest.write();

  for (const auto& [agent, score] : report.per_agent) {
    std::cout << "agent " << agent << ": fidelity " << score << " over "
              << report.step_counts.at(agent) << " steps\n";
  }
  return kExitOk;
}

int cmd_eval_bench(const EvalCommonArgs& common, const std::string& env,
                   const std::string& policy_name, int episodes,
                   std::optional<std::uint64_t> seed_flag,
                   const std::string& config_path) {
  if (episodes < 1) throw UsageError("--episodes must be at least 1");
  RunConfig config = load_run_config(config_path);
  const std::uint64_t seed = require_seed(seed_flag, config);

  Manifest manifest("eval-bench", common.out_dir);
  if (!config_path.empty()) manifest.add_input(config_path);

  vafex::JointPolicy policy;
  std::optional<vafex::TeamModel> team;
  std::string policy_desc;
  if (!policy_name.empty()) {
    if (policy_name != "scripted" || env != "mountain_car") {
      throw UsageError("--policy only supports 'scripted' on mountain_car");
    }
    policy = vafex::scripted_mc_joint_policy();
    policy_desc = "scripted";
  } else {
    team = load_eval_team(common, &manifest);
    policy = vafex::policy_from_team(*team);
    policy_desc = "model";
  }

  vafex::BenchmarkReport report;
  if (env == "mountain_car") {
    report = vafex::benchmark_mountain_car(policy, config.mc, episodes, seed);
  } else if (env == "takeaway_synth") {
    report = vafex::benchmark_takeaway(policy, config.takeaway, episodes, seed);
  } else {
    throw UsageError("unknown environment: " + env);
  }

  json j = stats_json(report.stats);
  j["decisions"] = report.decisions;
  const fs::path bench_path = manifest.path_for("bench.json");
  write_json_file(bench_path, j);
  manifest.add_output(bench_path);
  manifest.set_parameters({{"env", env},
                           {"policy", policy_desc},
                           {"episodes", episodes},
                           {"seed", seed}});
  manifest.write();

  print_stats(report.stats);
  std::cout << "decision latency: " << report.decision_mean_ms << " +/- "
            << report.decision_std_ms << " ms over " << report.decisions
            << " decisions\n";
  return kExitOk;
}

int cmd_eval_inspect(const EvalCommonArgs& common, int top_k) {
  std::optional<Manifest> manifest;
  if (!common.out_dir.empty()) manifest.emplace("eval-inspect", common.out_dir);
  vafex::TeamModel team =
      load_eval_team(common, manifest ? &*manifest : nullptr);

  json all = json::array();
  for (const vafex::AAAgentModel& member : team.members()) {
    vafex::InspectionReport report = vafex::inspect_top_k(member, top_k);
    std::cout << vafex::inspection_text(report);
    all.push_back(report.to_json());
  }
  if (manifest) {
    const fs::path path = manifest->path_for("inspection.json");
    write_json_file(path, all);
    manifest->add_output(path);
    manifest->set_parameters({{"top", top_k}});
    manifest->write();
  }
  return kExitOk;
}

int cmd_eval_grid(const EvalCommonArgs& common, const std::string& res,
                  const std::vector<std::string>& diff_paths) {
  if (!diff_paths.empty()) {
    if (diff_paths.size() != 2) {
      throw UsageError("--diff expects exactly two grid csv files");
    }
    std::ifstream a(diff_paths[0]), b(diff_paths[1]);
    if (!a) throw vafex::IoError("cannot read " + diff_paths[0]);
    if (!b) throw vafex::IoError("cannot read " + diff_paths[1]);
    const int mismatches = vafex::policy_grid_diff(
        vafex::policy_grid_from_csv(a), vafex::policy_grid_from_csv(b));
    std::cout << "mismatching cells: " << mismatches << '\n';
    return kExitOk;
  }

  int rows = 0, cols = 0;
  if (std::sscanf(res.c_str(), "%dx%d", &rows, &cols) != 2 || rows < 1 ||
      cols < 1) {
    throw UsageError("--res expects ROWSxCOLS, e.g. 20x20");
  }
  Manifest manifest("eval-grid", common.out_dir);
  vafex::TeamModel team = load_eval_team(common, &manifest);
  if (team.team_size() != 1) {
    throw UsageError("grid evaluation expects a single-agent model");
  }

  vafex::PolicyGrid grid = vafex::policy_grid(team.member(0), rows, cols);
  const fs::path csv_path = manifest.path_for("grid.csv");
  {
    std::ofstream out(csv_path);
    if (!out) throw vafex::IoError("cannot write " + csv_path.string());
    out << vafex::policy_grid_csv(grid);
  }
  const fs::path pgm_path = manifest.path_for("grid.pgm");
  {
    std::ofstream out(pgm_path);
    if (!out) throw vafex::IoError("cannot write " + pgm_path.string());
    out << vafex::policy_grid_pgm(grid,
                                  team.catalog().action_alphabet());
  }
  manifest.add_output(csv_path);
  manifest.add_output(pgm_path);
  manifest.set_parameters({{"res", res}});
  manifest.write();
  std::cout << "wrote " << csv_path.string() << " and " << pgm_path.string()
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value-based argumentation agent extraction toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "run a policy and log trajectories");
  gen_cmd->add_option("--env", gen.env, "mountain_car or takeaway_synth")
      ->required();
  gen_cmd->add_option("--policy", gen.policy, "scripted, ground_truth or model");
  gen_cmd->add_option("--episodes", gen.episodes, "episode count")->required();
  gen_cmd->add_option("--seed", gen.seed, "root random seed");
  gen_cmd->add_option("--out", gen.out_dir, "run directory")->required();
  gen_cmd->add_option("--format", gen.format, "jsonl or csv");
  gen_cmd->add_option("--config", gen.config_path, "run config json");
  gen_cmd->add_option("--model", gen.model_paths,
                      "model file(s) for --policy model");
  gen_cmd->add_option("--threads", gen.threads, "worker threads");

  ExtractArgs extract;
  CLI::App* extract_cmd =
      app.add_subcommand("extract", "extract value orderings from trajectories");
  extract_cmd
      ->add_option("--trajectories", extract.trajectories, "trajectory file")
      ->required();
  extract_cmd->add_option("--catalog", extract.catalog, "argument catalog file")
      ->required();
  extract_cmd->add_option("--out", extract.out_dir, "run directory")->required();
  extract_cmd->add_option("--agent", extract.agent, "agent index or 'all'");
  extract_cmd->add_option("--pruning", extract.pruning,
                          "pruning threshold (default 1)");
  extract_cmd->add_option(
      "--default-ordering", extract.default_ordering,
      "catalog, reverse, primaries_first, or a json file of ids");
  extract_cmd->add_option("--extraction-config", extract.extraction_config,
                          "extraction config json file");
  extract_cmd->add_option("--default-action", extract.default_action,
                          "fallback action for the extracted models");
  extract_cmd->add_flag("--joint", extract.joint,
                        "one joint ordering from joint actions");
  extract_cmd->add_option("--config", extract.config_path, "run config json");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate extracted models");
  eval_cmd->require_subcommand(1);

  EvalCommonArgs fid_common;
  std::string fid_trajectories, fid_holdout;
  CLI::App* fid_cmd = eval_cmd->add_subcommand("fidelity",
                                               "agreement with logged actions");
  fid_cmd->add_option("--model", fid_common.model_paths, "model file(s)")
      ->required();
  fid_cmd->add_flag("--centralized", fid_common.centralized,
                    "treat the team as one centralized selector");
  fid_cmd->add_option("--out", fid_common.out_dir, "run directory")->required();
  fid_cmd->add_option("--trajectories", fid_trajectories, "trajectory file");
  fid_cmd->add_option("--holdout", fid_holdout,
                      "score this held-out file instead of --trajectories");

  EvalCommonArgs bench_common;
  std::string bench_env, bench_policy, bench_config;
  int bench_episodes = 0;
  std::optional<std::uint64_t> bench_seed;
  CLI::App* bench_cmd =
      eval_cmd->add_subcommand("bench", "deployment timing and task stats");
  bench_cmd->add_option("--env", bench_env, "environment")->required();
  bench_cmd->add_option("--episodes", bench_episodes, "episode count")
      ->required();
  bench_cmd->add_option("--seed", bench_seed, "root random seed");
  bench_cmd->add_option("--model", bench_common.model_paths, "model file(s)");
  bench_cmd->add_flag("--centralized", bench_common.centralized,
                      "centralized team mode");
  bench_cmd->add_option("--policy", bench_policy, "scripted baseline");
  bench_cmd->add_option("--out", bench_common.out_dir, "run directory")
      ->required();
  bench_cmd->add_option("--config", bench_config, "run config json");

  EvalCommonArgs inspect_common;
  int inspect_top = 5;
  CLI::App* inspect_cmd =
      eval_cmd->add_subcommand("inspect", "top-valued primary arguments");
  inspect_cmd->add_option("--model", inspect_common.model_paths, "model file(s)")
      ->required();
  inspect_cmd->add_option("--top", inspect_top, "entries per agent");
  inspect_cmd->add_option("--out", inspect_common.out_dir,
                          "optional run directory");

  EvalCommonArgs grid_common;
  std::string grid_res = "20x20";
  std::vector<std::string> grid_diff;
  CLI::App* grid_cmd =
      eval_cmd->add_subcommand("grid", "policy grid export / comparison");
  grid_cmd->add_option("--model", grid_common.model_paths, "model file");
  grid_cmd->add_option("--res", grid_res, "ROWSxCOLS resolution");
  grid_cmd->add_option("--out", grid_common.out_dir, "run directory");
  grid_cmd->add_option("--diff", grid_diff,
                       "two grid csv files to compare instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (extract_cmd->parsed()) return cmd_extract(extract);
    if (fid_cmd->parsed()) {
      return cmd_eval_fidelity(fid_common, fid_trajectories, fid_holdout);
    }
    if (bench_cmd->parsed()) {
      return cmd_eval_bench(bench_common, bench_env, bench_policy,
                            bench_episodes, bench_seed, bench_config);
    }
    if (inspect_cmd->parsed()) {
      return cmd_eval_inspect(inspect_common, inspect_top);
    }
    if (grid_cmd->parsed()) {
      if (grid_common.model_paths.empty() && grid_diff.empty()) {
        throw UsageError("grid needs --model or --diff");
      }
      return cmd_eval_grid(grid_common, grid_res, grid_diff);
    }
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const vafex::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const vafex::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

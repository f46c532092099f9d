#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

int cli(const std::string& args) {
  const std::string command =
      std::string(VAFEX_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "vafex_cli_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli exit codes: 0 ok, 1 usage, 2 data") {
  const std::string out = (scratch() / "run").string();

  SUBCASE("usage errors") {
    CHECK(cli("") == 1);
    CHECK(cli("gen --env nowhere --episodes 5 --seed 1 --out " + out) == 1);
    CHECK(cli("gen --env mountain_car --policy scripted --episodes 0 "
              "--seed 1 --out " + out) == 1);
    CHECK(cli("gen --env takeaway_synth --policy scripted --episodes 5 "
              "--seed 1 --out " + out) == 1);
    // Randomized stages refuse to run without a seed.
    CHECK(cli("gen --env mountain_car --policy scripted --episodes 5 --out " +
              out) == 1);
  }

  SUBCASE("data errors") {
    CHECK(cli("extract --trajectories /no/such/file.jsonl --catalog " +
              out + "/catalog.json --out " + out + "_x") == 2);

    const fs::path empty = scratch() / "empty.jsonl";
    std::ofstream(empty).close();
    const fs::path gen_dir = scratch() / "gen_for_data";
    REQUIRE(cli("gen --env mountain_car --policy scripted --episodes 2 "
                "--seed 4 --out " + gen_dir.string()) == 0);
    // Fidelity on an empty trajectory file is an explicit no-data error.
    const fs::path ext_dir = scratch() / "ext_for_data";
    REQUIRE(cli("extract --trajectories " + (gen_dir / "trajectories.jsonl").string() +
                " --catalog " + (gen_dir / "catalog.json").string() +
                " --out " + ext_dir.string()) == 0);
    CHECK(cli("eval fidelity --model " + (ext_dir / "model_agent0.json").string() +
              " --trajectories " + empty.string() + " --out " +
              (scratch() / "fid").string()) == 2);
  }

  SUBCASE("a full pipeline succeeds") {
    const fs::path gen_dir = scratch() / "gen_ok";
    const fs::path ext_dir = scratch() / "ext_ok";
    CHECK(cli("gen --env mountain_car --policy scripted --episodes 3 "
              "--seed 9 --out " + gen_dir.string()) == 0);
    CHECK(cli("extract --trajectories " + (gen_dir / "trajectories.jsonl").string() +
              " --catalog " + (gen_dir / "catalog.json").string() +
              " --out " + ext_dir.string()) == 0);
    CHECK(cli("eval inspect --model " + (ext_dir / "model_agent0.json").string() +
              " --top 3") == 0);
    CHECK(fs::exists(ext_dir / "manifest.json"));

    const fs::path grid_dir = scratch() / "grid_ok";
    CHECK(cli("eval grid --model " + (ext_dir / "model_agent0.json").string() +
              " --res 4x4 --out " + grid_dir.string()) == 0);
    CHECK(cli("eval grid --diff " + (grid_dir / "grid.csv").string() + " " +
              (grid_dir / "grid.csv").string()) == 0);
  }
}

TEST_CASE("cli extraction variants") {
  const fs::path gen_dir = scratch() / "tk_gen";
  REQUIRE(cli("gen --env takeaway_synth --policy ground_truth --episodes 5 "
              "--seed 2 --out " + gen_dir.string()) == 0);
  const std::string traj = (gen_dir / "trajectories.jsonl").string();
  const std::string cat = (gen_dir / "catalog.json").string();

  SUBCASE("per-agent extraction writes one model per taker") {
    const fs::path ext_dir = scratch() / "tk_ext";
    REQUIRE(cli("extract --trajectories " + traj + " --catalog " + cat +
                " --out " + ext_dir.string()) == 0);
    for (int i = 0; i < 3; ++i) {
      CHECK(fs::exists(ext_dir / ("model_agent" + std::to_string(i) + ".json")));
      CHECK(fs::exists(ext_dir / ("ordering_agent" + std::to_string(i) + ".json")));
    }
  }

  SUBCASE("joint extraction feeds a centralized team") {
    const fs::path ext_dir = scratch() / "tk_joint";
    REQUIRE(cli("extract --joint --trajectories " + traj + " --catalog " + cat +
                " --out " + ext_dir.string()) == 0);
    std::string models;
    for (int i = 0; i < 3; ++i) {
      models += " --model " +
                (ext_dir / ("model_agent" + std::to_string(i) + ".json")).string();
    }
    CHECK(cli("eval fidelity --centralized" + models + " --trajectories " +
              traj + " --out " + (scratch() / "tk_cfid").string()) == 0);
  }

  SUBCASE("an extraction config file pins pruning and default ordering") {
    std::ifstream cat_in(cat);
    std::string cat_text((std::istreambuf_iterator<char>(cat_in)),
                         std::istreambuf_iterator<char>());
    // Crude id scrape keeps this test free of a json dependency.
    std::vector<std::string> ids;
    for (std::size_t pos = cat_text.find("\"id\": \"");
         pos != std::string::npos; pos = cat_text.find("\"id\": \"", pos + 1)) {
      const std::size_t start = pos + 7;
      ids.push_back(cat_text.substr(start, cat_text.find('"', start) - start));
    }
    REQUIRE(ids.size() == 51);
    std::string ordering = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ordering += (i ? ",\"" : "\"") + ids[i] + "\"";
    }
    ordering += "]";
    const fs::path config = scratch() / "extraction_config.json";
    std::ofstream(config) << "{\"pruning_threshold\": 1000000,"
                          << "\"default_ordering\": " << ordering << "}";

    const fs::path ext_dir = scratch() / "tk_cfg";
    REQUIRE(cli("extract --trajectories " + traj + " --catalog " + cat +
                " --extraction-config " + config.string() + " --agent 0 --out " +
                ext_dir.string()) == 0);
    // Everything pruned away: the extracted ordering is the default verbatim.
    std::ifstream ord_in(ext_dir / "ordering_agent0.json");
    std::string ord_text((std::istreambuf_iterator<char>(ord_in)),
                         std::istreambuf_iterator<char>());
    CHECK(ord_text.find("\"" + ids[0] + "\"") < ord_text.find("\"" + ids[1] + "\""));
  }

  SUBCASE("csv trajectories drive the same pipeline") {
    const fs::path gen_csv = scratch() / "tk_gen_csv";
    REQUIRE(cli("gen --env takeaway_synth --policy ground_truth --episodes 5 "
                "--seed 2 --format csv --out " + gen_csv.string()) == 0);
    CHECK(fs::exists(gen_csv / "trajectories.csv"));
    const fs::path ext_dir = scratch() / "tk_ext_csv";
    REQUIRE(cli("extract --trajectories " + (gen_csv / "trajectories.csv").string() +
                " --catalog " + (gen_csv / "catalog.json").string() +
                " --agent 1 --out " + ext_dir.string()) == 0);
    CHECK(fs::exists(ext_dir / "model_agent1.json"));
    CHECK(!fs::exists(ext_dir / "model_agent0.json"));
  }

  SUBCASE("empty trajectory files fall back to the default ordering") {
    const fs::path empty = scratch() / "none.jsonl";
    std::ofstream(empty).close();
    const fs::path ext_dir = scratch() / "tk_empty";
    CHECK(cli("extract --trajectories " + empty.string() + " --catalog " + cat +
              " --out " + ext_dir.string()) == 0);
    CHECK(fs::exists(ext_dir / "model_agent0.json"));
    CHECK(fs::exists(ext_dir / "model_agent2.json"));
  }
}

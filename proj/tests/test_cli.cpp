#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>

#include "sagin/commands.hpp"

using namespace sagin;
namespace fs = std::filesystem;

namespace {

ScenarioConfig smoke_config(uint64_t seed) {
  ScenarioConfig cfg;
  cfg.users_per_class = {2, 2, 2};
  cfg.episodes = 1;
  cfg.timesteps = 4;
  cfg.hidden_width = 8;
  cfg.hidden_layers = 2;
  cfg.central_buffer_capacity = 32;
  cfg.central_minibatch = 3;
  cfg.dist_buffer_capacity = 32;
  cfg.dist_minibatch = 3;
  cfg.seed = seed;
  validate_config(cfg);
  return cfg;
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "sagin_cli_test" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string manifest_value(const std::string& text, const std::string& key) {
  const std::string needle = key + "=";
  for (size_t at = 0; at < text.size();) {
    size_t end = text.find('\n', at);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(at, end - at);
    if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
    at = end + 1;
  }
  return "";
}

}  // namespace

TEST_CASE("read_csv / file helpers round-trip and report errors") {
  const fs::path dir = fresh_dir("io");
  const std::string path = (dir / "t.csv").string();
  write_file(path, "# comment\na,b,c\r\n1,2,3\n\n4,5,6\n");
  const CsvTable t = read_csv(path);
  REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
  CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
  CHECK(t.col("b") == 1);
  CHECK(t.col("zzz") == -1);
  CHECK(read_file(path).rfind("# comment", 0) == 0);
  CHECK_THROWS_AS(read_csv((dir / "missing.csv").string()), std::runtime_error);
  CHECK_THROWS_AS(read_file((dir / "missing.txt").string()), std::runtime_error);
  // write_file creates intermediate directories.
  write_file((dir / "deep/nested/x.txt").string(), "ok");
  CHECK(read_file((dir / "deep/nested/x.txt").string()) == "ok");
}

TEST_CASE("cmd_train writes a complete, parseable run directory") {
  const ScenarioConfig cfg = smoke_config(7);
  const fs::path dir = fresh_dir("train");
  REQUIRE(cmd_train(cfg, dir.string()) == 0);

  REQUIRE(fs::exists(dir / "metrics.csv"));
  REQUIRE(fs::exists(dir / "pareto.csv"));
  REQUIRE(fs::exists(dir / "config_snapshot.txt"));
  REQUIRE(fs::exists(dir / "manifest.txt"));
  REQUIRE(fs::exists(dir / "checkpoints" / "normalizer.txt"));
  for (const std::string stem : {"central", "dist1", "dist2", "dist3"})
    CHECK(fs::exists(dir / "checkpoints" / (stem + "_actor.bin")));

  const CsvTable m = read_csv((dir / "metrics.csv").string());
  CHECK((int)m.rows.size() == cfg.episodes * cfg.timesteps);
  for (const std::string name :
       {"episode", "t", "r1sum_bps", "d2ave_s", "sinr3ave_linear", "reward1",
        "reward2", "reward3", "central_reward", "repairs"})
    CHECK(m.col(name) >= 0);
  // Numeric cells parse as doubles with rewards inside [0,1].
  const int c1 = m.col("reward1");
  for (const auto& row : m.rows) {
    const double v = std::stod(row[c1]);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  const CsvTable p = read_csv((dir / "pareto.csv").string());
  CHECK(p.col("reward1") >= 0);
  CHECK(p.col("central_action") >= 0);
  CHECK(!p.rows.empty());

  // The snapshot is itself a loadable config equal to the run's.
  const ScenarioConfig snap =
      parse_config_text(read_file((dir / "config_snapshot.txt").string()));
  CHECK(config_to_text(snap) == config_to_text(cfg));

  const std::string man = read_file((dir / "manifest.txt").string());
  CHECK(manifest_value(man, "engine") == "cdmaddpg");
  CHECK(manifest_value(man, "metrics_rows") ==
        std::to_string(cfg.episodes * cfg.timesteps));
  CHECK(manifest_value(man, "seed") == "7");
  CHECK(!manifest_value(man, "config_hash").empty());
  CHECK(!manifest_value(man, "metrics_hash").empty());
}

TEST_CASE("same seed reproduces byte-identical metrics; seeds differ") {
  const ScenarioConfig cfg = smoke_config(11);
  const fs::path d1 = fresh_dir("repro1"), d2 = fresh_dir("repro2");
  REQUIRE(cmd_train(cfg, d1.string()) == 0);
  REQUIRE(cmd_train(cfg, d2.string()) == 0);
  CHECK(read_file((d1 / "metrics.csv").string()) ==
        read_file((d2 / "metrics.csv").string()));
  CHECK(manifest_value(read_file((d1 / "manifest.txt").string()), "metrics_hash") ==
        manifest_value(read_file((d2 / "manifest.txt").string()), "metrics_hash"));

  ScenarioConfig other = cfg;
  other.seed = 12;
  const fs::path d3 = fresh_dir("repro3");
  REQUIRE(cmd_train(other, d3.string()) == 0);
  CHECK(read_file((d1 / "metrics.csv").string()) !=
        read_file((d3 / "metrics.csv").string()));
}

TEST_CASE("cmd_baseline covers both engines and rejects unknown ones") {
  const ScenarioConfig cfg = smoke_config(13);
  const UtilityWeights w{1.0, 1.0, 1.0};

  const fs::path md = fresh_dir("maddpg");
  REQUIRE(cmd_baseline(cfg, "maddpg", w, md.string()) == 0);
  const std::string man = read_file((md / "manifest.txt").string());
  CHECK(manifest_value(man, "engine") == "maddpg");
  CHECK(fs::exists(md / "checkpoints" / "agent1_actor.bin"));
  CHECK(fs::exists(md / "checkpoints" / "agent3_critic.bin"));
  // MADDPG logs a zero central reward column.
  const CsvTable m = read_csv((md / "metrics.csv").string());
  const int cc = m.col("central_reward");
  for (const auto& row : m.rows) CHECK(std::stod(row[cc]) == 0.0);

  const fs::path ud = fresh_dir("utility");
  REQUIRE(cmd_baseline(cfg, "utility", w, ud.string()) == 0);
  CHECK(manifest_value(read_file((ud / "manifest.txt").string()), "engine") ==
        "utility");
  CHECK(fs::exists(ud / "checkpoints" / "agent_actor.bin"));

  CHECK_THROWS_AS(cmd_baseline(cfg, "dqn", w, fresh_dir("bad").string()),
                  std::invalid_argument);
}

TEST_CASE("cmd_ablate produces both ablation runs") {
  const ScenarioConfig cfg = smoke_config(17);
  const fs::path dir = fresh_dir("ablate");
  REQUIRE(cmd_ablate(cfg, dir.string()) == 0);
  CHECK(manifest_value(read_file((dir / "single_alloc" / "manifest.txt").string()),
                       "engine") == "cdmaddpg-single-alloc");
  CHECK(manifest_value(read_file((dir / "fixed_uav" / "manifest.txt").string()),
                       "engine") == "cdmaddpg-fixed-uav");
  CHECK(fs::exists(dir / "single_alloc" / "metrics.csv"));
  CHECK(fs::exists(dir / "fixed_uav" / "metrics.csv"));
}

TEST_CASE("cmd_pareto merges fronts, drops dominated rows, writes a surface") {
  const fs::path dir = fresh_dir("pareto");
  // Hand-written candidate files: (0.05, 0.05, 0.2) is dominated by every
  // other point; the remaining three trade off and must all survive.
  const std::string header =
      "episode,t,reward1,reward2,reward3,r1sum_bps,delay_margin_s,"
      "sinr3ave_linear,central_action,dist_actions\n";
  write_file((dir / "a" / "pareto.csv").string(),
             header +
                 "0,0,0.9,0.1,0.5,9e6,0.01,5,0.5;0.5,0.1|0.2|0.3\n"
                 "0,1,0.05,0.05,0.2,2e6,0.02,2,0.5;0.5,0.1|0.2|0.3\n"
                 "0,2,0.5,0.5,0.9,5e6,0.10,9,0.5;0.5,0.1|0.2|0.3\n");
  write_file((dir / "b" / "pareto.csv").string(),
             header + "1,0,0.1,0.9,0.5,1e6,0.18,5,0.4;0.6,0.3|0.2|0.1\n");

  const fs::path out = dir / "merged";
  REQUIRE(cmd_pareto({(dir / "a").string(), (dir / "b" / "pareto.csv").string()},
                     out.string(), 9) == 0);

  const CsvTable merged = read_csv((out / "pareto_merged.csv").string());
  REQUIRE(merged.rows.size() == 3);
  const int r1 = merged.col("reward1");
  std::vector<std::string> got;
  for (const auto& row : merged.rows) got.push_back(row[r1]);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"0.1", "0.5", "0.9"});

  const std::string surface = read_file((out / "surface.csv").string());
  CHECK(surface.find("# ok=") != std::string::npos);
  CHECK(surface.find("resolution=9") != std::string::npos);

  CHECK_THROWS_AS(cmd_pareto({}, out.string(), 9), std::invalid_argument);
  CHECK_THROWS_AS(
      cmd_pareto({(dir / "nope").string()}, out.string(), 9),
      std::runtime_error);
}

TEST_CASE("cmd_export renders trace and pareto SVGs") {
  const ScenarioConfig cfg = smoke_config(19);
  const fs::path dir = fresh_dir("export");
  REQUIRE(cmd_train(cfg, (dir / "run").string()) == 0);

  const std::string trace_svg = (dir / "trace.svg").string();
  REQUIRE(cmd_export((dir / "run" / "metrics.csv").string(), trace_svg,
                     "trace") == 0);
  const std::string ts = read_file(trace_svg);
  CHECK(ts.find("<svg") != std::string::npos);
  CHECK(ts.find("<polyline") != std::string::npos);
  CHECK(ts.find("</svg>") != std::string::npos);

  const std::string front_svg = (dir / "front.svg").string();
  REQUIRE(cmd_export((dir / "run" / "pareto.csv").string(), front_svg,
                     "pareto") == 0);
  const std::string ps = read_file(front_svg);
  CHECK(ps.find("<svg") != std::string::npos);
  CHECK(ps.find("<circle") != std::string::npos);

  CHECK_THROWS_AS(
      cmd_export((dir / "run" / "metrics.csv").string(), trace_svg, "heat"),
      std::invalid_argument);
}

TEST_CASE("default_out_root honors the environment override") {
  // Note: setenv is process-global; restore afterwards.
  const char* keep = std::getenv("SAGINSIM_OUT");
  setenv("SAGINSIM_OUT", "/tmp/sagin_alt_root", 1);
  CHECK(default_out_root() == "/tmp/sagin_alt_root");
  if (keep)
    setenv("SAGINSIM_OUT", keep, 1);
  else
    unsetenv("SAGINSIM_OUT");
  CHECK(!default_out_root().empty());
}

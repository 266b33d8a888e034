// commands.hpp - the CLI verbs as library functions so tests can run them
// in-process. Each run writes metrics.csv, pareto.csv (when the engine
// produces candidates), config_snapshot.txt, checkpoints/ and manifest.txt.
#pragma once

#include <string>
#include <vector>

#include "sagin/orchestrator.hpp"

namespace sagin {

// Output root: the SAGINSIM_OUT environment variable when set, else "runs".
std::string default_out_root();

// Serialize one finished run under out_dir (created if needed).
void write_run_outputs(const std::string& out_dir, const ScenarioConfig& cfg,
                       const std::string& engine, const TrainingArtifacts& art);

// Train the proposed scheme and write its artifacts. Returns a process exit code.
int cmd_train(const ScenarioConfig& cfg, const std::string& out_dir,
              const TrainOptions& topts = {});

// engine: "maddpg" | "utility" (utility uses the scalar weights).
int cmd_baseline(const ScenarioConfig& cfg, const std::string& engine,
                 const UtilityWeights& w, const std::string& out_dir);

// Two ablations of the proposed scheme into out_dir/single_alloc and
// out_dir/fixed_uav.
int cmd_ablate(const ScenarioConfig& cfg, const std::string& out_dir);

// Merge pareto.csv files (paths or run directories), re-filter the union by
// the reward triple, and write pareto_merged.csv plus a boundary surface grid
// (surface.csv) over the objective cloud.
int cmd_pareto(const std::vector<std::string>& inputs, const std::string& out_dir,
               int resolution);

// Render a CSV as a standalone SVG. kind: "trace" (per-episode mean reward
// lines from metrics.csv) | "pareto" (reward scatter from pareto.csv).
int cmd_export(const std::string& csv_path, const std::string& svg_path,
               const std::string& kind);

// --- helpers shared with tests ----------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int col(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sagin

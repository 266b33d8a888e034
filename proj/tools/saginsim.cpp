// saginsim.cpp - command-line front end: train | baseline | ablate | pareto |
// export. All heavy lifting lives in the library so tests can call it directly.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sagin/commands.hpp"

using namespace sagin;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int episodes = -1;
  int timesteps = -1;
  long long seed = -1;
};

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--config", a.config_path, "key=value config file");
  sub->add_option("--out", a.out_dir, "output directory");
  sub->add_option("--episodes", a.episodes, "override episode count");
  sub->add_option("--timesteps", a.timesteps, "override slots per episode");
  sub->add_option("--seed", a.seed, "override master seed");
}

ScenarioConfig resolve(const CommonArgs& a) {
  ScenarioConfig cfg =
      a.config_path.empty() ? ScenarioConfig{} : load_config(a.config_path);
  if (a.episodes > 0) cfg.episodes = a.episodes;
  if (a.timesteps > 0) cfg.timesteps = a.timesteps;
  if (a.seed >= 0) cfg.seed = (uint64_t)a.seed;
  validate_config(cfg);
  return cfg;
}

std::string out_or(const CommonArgs& a, const std::string& leaf) {
  if (!a.out_dir.empty()) return a.out_dir;
  return default_out_root() + "/" + leaf + "-seed" +
         (a.seed >= 0 ? std::to_string(a.seed) : std::string("1"));
}

UtilityWeights parse_weights(const std::string& text) {
  UtilityWeights w;
  if (text.empty()) return w;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &w.w1, &w.w2, &w.w3) != 3)
    throw CLI::ValidationError("--weights expects w1:w2:w3");
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAGIN slicing simulator"};
  app.require_subcommand(1);

  CommonArgs train_args, base_args, abl_args;
  bool train_single = false, train_fixed_uav = false;
  std::string base_engine = "maddpg", weights_text;
  std::vector<std::string> pareto_inputs;
  std::string pareto_out;
  int pareto_res = 41;
  std::string exp_csv, exp_svg, exp_kind = "trace";

  CLI::App* train = app.add_subcommand("train", "train the proposed scheme");
  add_common(train, train_args);
  train->add_flag("--single-alloc", train_single,
                  "disable the second allocation round");
  train->add_flag("--fixed-uav", train_fixed_uav,
                  "pin vUAVs to their start coordinates");

  CLI::App* baseline = app.add_subcommand("baseline", "train a benchmark engine");
  add_common(baseline, base_args);
  baseline->add_option("--engine", base_engine, "maddpg | utility")
      ->check(CLI::IsMember({"maddpg", "utility"}));
  baseline->add_option("--weights", weights_text,
                       "utility weights w1:w2:w3 (utility engine)");

  CLI::App* ablate = app.add_subcommand("ablate", "run both ablations");
  add_common(ablate, abl_args);

  CLI::App* pareto = app.add_subcommand("pareto", "merge and re-filter fronts");
  pareto->add_option("inputs", pareto_inputs, "pareto.csv files or run dirs")
      ->required();
  pareto->add_option("--out", pareto_out, "output directory")->required();
  pareto->add_option("--resolution", pareto_res, "surface grid resolution");

  CLI::App* exp = app.add_subcommand("export", "render a CSV as SVG");
  exp->add_option("--csv", exp_csv, "input CSV")->required();
  exp->add_option("--svg", exp_svg, "output SVG")->required();
  exp->add_option("--kind", exp_kind, "trace | pareto")
      ->check(CLI::IsMember({"trace", "pareto"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      TrainOptions topts;
      topts.dual_repair = !train_single;
      topts.learn_vuav = !train_fixed_uav;
      return cmd_train(resolve(train_args), out_or(train_args, "cdmaddpg"), topts);
    }
    if (baseline->parsed())
      return cmd_baseline(resolve(base_args), base_engine,
                          parse_weights(weights_text),
                          out_or(base_args, base_engine));
    if (ablate->parsed())
      return cmd_ablate(resolve(abl_args), out_or(abl_args, "ablate"));
    if (pareto->parsed()) return cmd_pareto(pareto_inputs, pareto_out, pareto_res);
    if (exp->parsed()) return cmd_export(exp_csv, exp_svg, exp_kind);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 1;
}

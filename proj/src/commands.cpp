// commands.cpp - run serialization, the pareto merge tool and the SVG export.
#include "sagin/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace sagin {

// --- small file helpers --------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

int CsvTable::col(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return (int)i;
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.push_back("");
    return out;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (table.header.empty()) table.header = split(line);
    else table.rows.push_back(split(line));
  }
  if (table.header.empty()) throw std::runtime_error("empty csv: " + path);
  return table;
}

std::string default_out_root() {
  const char* env = std::getenv("SAGINSIM_OUT");
  return (env && *env) ? env : "runs";
}

// --- run serialization -----------------------------------------------------------

namespace {

std::string join_values(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += fmt_g(v[i], 17);
  }
  return out;
}

std::string hash_hex(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)fnv1a(bytes));
  return buf;
}

std::string metrics_csv_text(const std::vector<MetricsRow>& rows) {
  std::string out =
      "episode,t,r1sum_bps,d2ave_s,sinr3ave_linear,reward1,reward2,reward3,"
      "central_reward,repairs\n";
  for (const MetricsRow& r : rows) {
    out += std::to_string(r.episode) + ',' + std::to_string(r.t) + ',' +
           fmt_g(r.r1sum_bps) + ',' + fmt_g(r.d2ave_s) + ',' + fmt_g(r.sinr3ave) +
           ',' + fmt_g(r.reward1) + ',' + fmt_g(r.reward2) + ',' + fmt_g(r.reward3) +
           ',' + fmt_g(r.central_reward) + ',' + std::to_string(r.repairs) + '\n';
  }
  return out;
}

std::string pareto_csv_text(const std::vector<ParetoCandidate>& pts) {
  std::string out =
      "episode,t,reward1,reward2,reward3,r1sum_bps,delay_margin_s,"
      "sinr3ave_linear,central_action,dist_actions\n";
  for (const ParetoCandidate& p : pts) {
    std::string dist;
    for (int s = 0; s < kNumClasses; ++s) {
      if (s) dist += '|';
      dist += join_values(p.dist_actions[s]);
    }
    out += std::to_string(p.episode) + ',' + std::to_string(p.t) + ',' +
           fmt_g(p.rewards[0], 17) + ',' + fmt_g(p.rewards[1], 17) + ',' +
           fmt_g(p.rewards[2], 17) + ',' + fmt_g(p.objectives[0], 17) + ',' +
           fmt_g(p.objectives[1], 17) + ',' + fmt_g(p.objectives[2], 17) + ',' +
           join_values(p.central_action) + ',' + dist + '\n';
  }
  return out;
}

void print_summary(const std::string& tag, const std::string& dir,
                   const TrainingArtifacts& art) {
  double r1 = 0, d2 = 0, s3 = 0;
  int n = 0;
  if (!art.trace.empty()) {
    const int last = art.trace.back().episode;
    for (const MetricsRow& r : art.trace)
      if (r.episode == last) {
        r1 += r.r1sum_bps;
        d2 += r.d2ave_s;
        s3 += r.sinr3ave;
        ++n;
      }
  }
  if (n == 0) n = 1;
  std::cout << "[" << tag << "] " << dir << " rows=" << art.trace.size()
            << " pareto=" << art.pareto.size()
            << " last-episode R1=" << fmt_g(r1 / n, 6)
            << " bps D2=" << fmt_g(d2 / n, 6)
            << " s SINR3=" << fmt_g(s3 / n, 6) << "\n";
}

}  // namespace

void write_run_outputs(const std::string& out_dir, const ScenarioConfig& cfg,
                       const std::string& engine, const TrainingArtifacts& art) {
  fs::create_directories(fs::path(out_dir) / "checkpoints");

  const std::string metrics = metrics_csv_text(art.trace);
  write_file((fs::path(out_dir) / "metrics.csv").string(), metrics);

  std::string pareto;
  if (!art.pareto.empty()) {
    pareto = pareto_csv_text(art.pareto);
    write_file((fs::path(out_dir) / "pareto.csv").string(), pareto);
  }

  const std::string snapshot = config_to_text(cfg);
  write_file((fs::path(out_dir) / "config_snapshot.txt").string(), snapshot);

  std::vector<std::string> stems;
  if (art.agents.size() == 4) stems = {"central", "dist1", "dist2", "dist3"};
  else if (art.agents.size() == 3) stems = {"agent1", "agent2", "agent3"};
  else
    for (size_t i = 0; i < art.agents.size(); ++i)
      stems.push_back(art.agents.size() == 1 ? "agent"
                                             : "agent" + std::to_string(i));
  const std::string ckpt_dir = (fs::path(out_dir) / "checkpoints").string();
  for (size_t i = 0; i < art.agents.size(); ++i)
    save_agent(art.agents[i], ckpt_dir, stems[i]);
  write_file((fs::path(ckpt_dir) / "normalizer.txt").string(),
             art.normalizer.to_text());

  std::string manifest;
  manifest += "config_hash=" + hash_hex(snapshot) + "\n";
  manifest += "engine=" + engine + "\n";
  manifest += "episodes=" + std::to_string(cfg.episodes) + "\n";
  manifest += "metrics_hash=" + hash_hex(metrics) + "\n";
  manifest += "metrics_rows=" + std::to_string(art.trace.size()) + "\n";
  manifest += "pareto_hash=" + (pareto.empty() ? std::string("0") : hash_hex(pareto)) + "\n";
  manifest += "pareto_points=" + std::to_string(art.pareto.size()) + "\n";
  manifest += "seed=" + std::to_string(cfg.seed) + "\n";
  manifest += "timesteps=" + std::to_string(cfg.timesteps) + "\n";
  write_file((fs::path(out_dir) / "manifest.txt").string(), manifest);
}

// --- verbs ------------------------------------------------------------------------

int cmd_train(const ScenarioConfig& cfg, const std::string& out_dir,
              const TrainOptions& topts) {
  const TrainingArtifacts art = run_training(cfg, topts);
  write_run_outputs(out_dir, cfg, "cdmaddpg", art);
  print_summary("train", out_dir, art);
  return 0;
}

int cmd_baseline(const ScenarioConfig& cfg, const std::string& engine,
                 const UtilityWeights& w, const std::string& out_dir) {
  TrainingArtifacts art;
  if (engine == "maddpg") art = run_maddpg_baseline(cfg);
  else if (engine == "utility") art = run_scalar_utility_baseline(cfg, w);
  else throw std::invalid_argument("unknown baseline engine: " + engine);
  write_run_outputs(out_dir, cfg, engine, art);
  print_summary(engine, out_dir, art);
  return 0;
}

int cmd_ablate(const ScenarioConfig& cfg, const std::string& out_dir) {
  TrainOptions single;
  single.dual_repair = false;
  const TrainingArtifacts a1 = run_training(cfg, single);
  const std::string d1 = (fs::path(out_dir) / "single_alloc").string();
  write_run_outputs(d1, cfg, "cdmaddpg-single-alloc", a1);
  print_summary("ablate:single_alloc", d1, a1);

  TrainOptions fixed;
  fixed.learn_vuav = false;
  const TrainingArtifacts a2 = run_training(cfg, fixed);
  const std::string d2 = (fs::path(out_dir) / "fixed_uav").string();
  write_run_outputs(d2, cfg, "cdmaddpg-fixed-uav", a2);
  print_summary("ablate:fixed_uav", d2, a2);
  return 0;
}

int cmd_pareto(const std::vector<std::string>& inputs, const std::string& out_dir,
               int resolution) {
  if (inputs.empty()) throw std::invalid_argument("pareto: no inputs");
  if (resolution < 2) throw std::invalid_argument("pareto: resolution >= 2");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::array<double, 3>> rewards, objectives;
  std::string header;
  for (const std::string& input : inputs) {
    std::string path = input;
    if (fs::is_directory(path)) path = (fs::path(path) / "pareto.csv").string();
    const CsvTable t = read_csv(path);
    const int cr[3] = {t.col("reward1"), t.col("reward2"), t.col("reward3")};
    const int co[3] = {t.col("r1sum_bps"), t.col("delay_margin_s"),
                       t.col("sinr3ave_linear")};
    for (int i = 0; i < 3; ++i)
      if (cr[i] < 0 || co[i] < 0)
        throw std::runtime_error("pareto: missing columns in " + path);
    if (header.empty()) {
      for (size_t i = 0; i < t.header.size(); ++i)
        header += (i ? "," : "") + t.header[i];
      header += '\n';
    }
    for (const auto& row : t.rows) {
      rewards.push_back({std::stod(row[cr[0]]), std::stod(row[cr[1]]),
                         std::stod(row[cr[2]])});
      objectives.push_back({std::stod(row[co[0]]), std::stod(row[co[1]]),
                            std::stod(row[co[2]])});
      rows.push_back(row);
    }
  }

  const std::vector<int> keep = nondominated_filter(rewards);
  std::string merged = header;
  std::vector<std::array<double, 3>> kept_obj;
  for (int i : keep) {
    std::string line;
    for (size_t j = 0; j < rows[i].size(); ++j) line += (j ? "," : "") + rows[i][j];
    merged += line + '\n';
    kept_obj.push_back(objectives[i]);
  }
  write_file((fs::path(out_dir) / "pareto_merged.csv").string(), merged);

  const BoundarySurface surf = boundary_surface(kept_obj, resolution);
  std::string stext = "# ok=" + std::string(surf.ok ? "1" : "0") +
                      " note=" + surf.note + "\n";
  if (surf.ok) {
    stext += "# x0=" + fmt_g(surf.x0, 17) + " x1=" + fmt_g(surf.x1, 17) +
             " y0=" + fmt_g(surf.y0, 17) + " y1=" + fmt_g(surf.y1, 17) +
             " resolution=" + std::to_string(surf.resolution) + "\n";
    stext += "ix,iy,x,y,z\n";
    for (int iy = 0; iy < surf.resolution; ++iy)
      for (int ix = 0; ix < surf.resolution; ++ix) {
        const double fx = surf.resolution > 1 ? (double)ix / (surf.resolution - 1) : 0;
        const double fy = surf.resolution > 1 ? (double)iy / (surf.resolution - 1) : 0;
        const double x = surf.x0 + fx * (surf.x1 - surf.x0);
        const double y = surf.y0 + fy * (surf.y1 - surf.y0);
        const double z = surf.at(iy, ix);
        stext += std::to_string(ix) + ',' + std::to_string(iy) + ',' + fmt_g(x) +
                 ',' + fmt_g(y) + ',' + (std::isnan(z) ? "nan" : fmt_g(z)) + '\n';
      }
  }
  write_file((fs::path(out_dir) / "surface.csv").string(), stext);
  std::cout << "[pareto] " << out_dir << " kept=" << keep.size() << "/"
            << rewards.size() << " surface=" << (surf.ok ? "ok" : surf.note)
            << "\n";
  return 0;
}

// --- SVG export -------------------------------------------------------------------

namespace {

constexpr int kSvgW = 640, kSvgH = 420, kMargin = 56;

std::string svg_open() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kSvgW) + "\" height=\"" + std::to_string(kSvgH) +
         "\" viewBox=\"0 0 " + std::to_string(kSvgW) + " " +
         std::to_string(kSvgH) + "\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string svg_axes(double x0, double x1, double y0, double y1,
                     const std::string& xlabel, const std::string& ylabel) {
  const int L = kMargin, R = kSvgW - kMargin, T = kMargin, B = kSvgH - kMargin;
  std::string s;
  s += "<line x1=\"" + std::to_string(L) + "\" y1=\"" + std::to_string(B) +
       "\" x2=\"" + std::to_string(R) + "\" y2=\"" + std::to_string(B) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + std::to_string(L) + "\" y1=\"" + std::to_string(T) +
       "\" x2=\"" + std::to_string(L) + "\" y2=\"" + std::to_string(B) +
       "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + std::to_string(L) + "\" y=\"" + std::to_string(B + 16) +
       "\" font-size=\"11\">" + fmt_g(x0, 5) + "</text>\n";
  s += "<text x=\"" + std::to_string(R - 30) + "\" y=\"" + std::to_string(B + 16) +
       "\" font-size=\"11\">" + fmt_g(x1, 5) + "</text>\n";
  s += "<text x=\"4\" y=\"" + std::to_string(B) + "\" font-size=\"11\">" +
       fmt_g(y0, 5) + "</text>\n";
  s += "<text x=\"4\" y=\"" + std::to_string(T + 10) + "\" font-size=\"11\">" +
       fmt_g(y1, 5) + "</text>\n";
  s += "<text x=\"" + std::to_string((L + R) / 2 - 20) + "\" y=\"" +
       std::to_string(kSvgH - 8) + "\" font-size=\"12\">" + xlabel + "</text>\n";
  s += "<text x=\"8\" y=\"" + std::to_string(T - 12) + "\" font-size=\"12\">" +
       ylabel + "</text>\n";
  return s;
}

double map_x(double v, double v0, double v1) {
  const double f = (v1 > v0) ? (v - v0) / (v1 - v0) : 0.5;
  return kMargin + f * (kSvgW - 2 * kMargin);
}

double map_y(double v, double v0, double v1) {
  const double f = (v1 > v0) ? (v - v0) / (v1 - v0) : 0.5;
  return (kSvgH - kMargin) - f * (kSvgH - 2 * kMargin);
}

const char* kLineColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};

}  // namespace

int cmd_export(const std::string& csv_path, const std::string& svg_path,
               const std::string& kind) {
  const CsvTable t = read_csv(csv_path);
  std::string svg = svg_open();

  if (kind == "trace") {
    const int ce = t.col("episode");
    const char* names[] = {"reward1", "reward2", "reward3", "central_reward"};
    int cols[4];
    for (int i = 0; i < 4; ++i) {
      cols[i] = t.col(names[i]);
      if (cols[i] < 0)
        throw std::runtime_error("export: missing column " +
                                 std::string(names[i]));
    }
    if (ce < 0) throw std::runtime_error("export: missing column episode");
    // Per-episode means of the four reward columns.
    std::vector<std::array<double, 5>> acc;  // sums + count, indexed by episode
    for (const auto& row : t.rows) {
      const int e = std::stoi(row[ce]);
      if (e >= (int)acc.size()) acc.resize(e + 1, {0, 0, 0, 0, 0});
      for (int i = 0; i < 4; ++i) acc[e][i] += std::stod(row[cols[i]]);
      acc[e][4] += 1.0;
    }
    double lo = 1e300, hi = -1e300;
    std::vector<std::array<double, 4>> mean(acc.size());
    for (size_t e = 0; e < acc.size(); ++e)
      for (int i = 0; i < 4; ++i) {
        mean[e][i] = acc[e][4] > 0 ? acc[e][i] / acc[e][4] : 0.0;
        lo = std::min(lo, mean[e][i]);
        hi = std::max(hi, mean[e][i]);
      }
    if (acc.empty()) throw std::runtime_error("export: no rows in " + csv_path);
    if (hi <= lo) hi = lo + 1.0;
    svg += svg_axes(0, (double)acc.size() - 1, lo, hi, "episode", "mean reward");
    for (int i = 0; i < 4; ++i) {
      std::string pts;
      for (size_t e = 0; e < mean.size(); ++e)
        pts += fmt_g(map_x((double)e, 0, (double)acc.size() - 1), 6) + "," +
               fmt_g(map_y(mean[e][i], lo, hi), 6) + " ";
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(kLineColors[i]) +
             "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      svg += "<text x=\"" + std::to_string(kSvgW - kMargin + 4) + "\" y=\"" +
             std::to_string(kMargin + 14 * i) + "\" font-size=\"10\" fill=\"" +
             kLineColors[i] + "\">" + names[i] + "</text>\n";
    }
  } else if (kind == "pareto") {
    const int c1 = t.col("reward1"), c2 = t.col("reward2"), c3 = t.col("reward3");
    if (c1 < 0 || c2 < 0 || c3 < 0)
      throw std::runtime_error("export: missing reward columns");
    if (t.rows.empty()) throw std::runtime_error("export: no rows in " + csv_path);
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    std::vector<std::array<double, 3>> pts;
    for (const auto& row : t.rows) {
      const std::array<double, 3> p = {std::stod(row[c1]), std::stod(row[c2]),
                                       std::stod(row[c3])};
      x0 = std::min(x0, p[0]);
      x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]);
      y1 = std::max(y1, p[1]);
      pts.push_back(p);
    }
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
    svg += svg_axes(x0, x1, y0, y1, "reward1", "reward2");
    for (const auto& p : pts)
      svg += "<circle cx=\"" + fmt_g(map_x(p[0], x0, x1), 6) + "\" cy=\"" +
             fmt_g(map_y(p[1], y0, y1), 6) + "\" r=\"" +
             fmt_g(2.5 + 4.0 * std::clamp(p[2], 0.0, 1.0), 4) +
             "\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
  } else {
    throw std::invalid_argument("export: unknown kind " + kind);
  }

  svg += "</svg>\n";
  write_file(svg_path, svg);
  std::cout << "[export] " << svg_path << "\n";
  return 0;
}

}  // namespace sagin

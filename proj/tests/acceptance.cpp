// acceptance.cpp - scenario-level checks for the full simulator: formula
// oracles against brute-force reimplementations, M/D/1 queueing validity,
// gradient correctness, constraint safety, rank-vote optimality, the
// training-cost identity, layout conformance, trend/ablation orderings,
// determinism, and a soft audit of the learned satellite shares. Prints one
// pass/fail line per criterion; exits nonzero if a blocking criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sagin/commands.hpp"
#include "sagin/orchestrator.hpp"
#include "support/oracles.hpp"

using namespace sagin;

namespace {

int g_blocking_failures = 0;

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void report(int idx, const std::string& name, bool pass,
            const std::string& detail, bool blocking = true) {
  std::printf("[%s] %02d %-22s %s%s\n", pass ? "PASS" : "FAIL", idx,
              name.c_str(), detail.c_str(),
              blocking ? "" : " [non-blocking]");
  std::fflush(stdout);
  if (!pass && blocking) ++g_blocking_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

double rel_err(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

std::vector<double> random_unit(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

AllocationDecision random_repaired_decision(const ScenarioConfig& cfg, Rng& rng) {
  const CentralCommand cmd =
      decode_central_action(random_unit(12 + 2 * cfg.num_vuav, rng), cfg);
  std::array<std::vector<double>, 3> raws;
  for (int s = 0; s < kNumClasses; ++s)
    raws[s] = random_unit(3 * cfg.users_per_class[s], rng);
  return dual_resource_allocation(assemble_decision(cmd, raws, cfg), cfg).decision;
}

double mean_range(const std::vector<MetricsRow>& rows, size_t from, size_t to,
                  int which) {
  double acc = 0.0;
  for (size_t i = from; i < to; ++i) {
    const MetricsRow& r = rows[i];
    acc += which == 0 ? r.reward1 : which == 1 ? r.reward2 : r.reward3;
  }
  return acc / double(to - from);
}

// --- criterion 1: formula oracles -------------------------------------------

void criterion_formula_oracles() {
  Timer timer;
  const ScenarioConfig cfg;
  Rng rng = make_stream(1001, "sampling");
  std::uniform_real_distribution<double> u(0.0, 1.0);

  double worst = 0.0;
  const int kPer = 10000;

  // Layer gain + rate compositions on random scalars.
  for (int i = 0; i < kPer; ++i) {
    const double d = 1.0 + 2999.0 * u(rng);
    const double p = 20.0 * u(rng);
    const double I = u(rng) < 0.3 ? 0.0 : std::pow(10.0, -14.0 + 6.0 * u(rng));
    double g_lib, g_ref;
    switch (i % 3) {
      case 0: {
        const double h = -std::log(1.0 - 0.999999 * u(rng));
        g_lib = terrestrial_gain_from(h, d, cfg.path_loss_exp);
        g_ref = oracle::terr_gain(h, d, cfg.path_loss_exp);
        break;
      }
      case 1: {
        const double re = 3.0 * (u(rng) - 0.5), im = 3.0 * (u(rng) - 0.5);
        g_lib = vuav_gain_from(re, im, d, cfg.ref_gain, cfg.path_loss_exp,
                               cfg.rician_factor);
        g_ref = oracle::uav_gain(re, im, d, cfg.ref_gain, cfg.path_loss_exp,
                                 cfg.rician_factor);
        break;
      }
      default: {
        const double dd = cfg.vleo_altitude_m * (0.5 + u(rng));
        g_lib = vleo_gain(dd, cfg.carrier_hz, cfg.path_loss_exp);
        g_ref = oracle::leo_gain(dd, cfg.carrier_hz, cfg.path_loss_exp,
                                 kLightSpeed);
        break;
      }
    }
    worst = std::max(worst, rel_err(g_lib, g_ref));
    worst = std::max(
        worst, rel_err(subchannel_rate(p, g_lib, I, cfg),
                       oracle::rate_formula(p, g_ref, I, cfg.subchannel_hz(),
                                            cfg.noise_psd_w_hz)));
  }

  // Service delay on random stable queues.
  for (int i = 0; i < kPer; ++i) {
    const double dist = 1.0 + 2.0e5 * u(rng);
    const double A = 100.0 + 1e5 * u(rng);
    const double R = 1e5 + 2e7 * u(rng);
    const double lam = R * 0.98 * u(rng);  // keep the queue stable
    worst = std::max(worst, rel_err(service_delay(dist, A, R, lam, cfg),
                                    oracle::delay_formula(dist, A, R, lam, cfg)));
  }

  // Interference, SINR, power, throughput on repaired random decisions.
  Rng topo = make_stream(1002, "topology"), arr = make_stream(1002, "arrivals");
  Rng fad = make_stream(1002, "fading");
  TopologyState st = init_topology(cfg, topo, arr);
  int n_intf = 0, n_sinr = 0, n_pow = 0, n_thru = 0;
  std::uniform_int_distribution<int> pick_s(0, 2);
  std::uniform_int_distribution<int> pick_c(0, cfg.num_components() - 1);
  std::uniform_int_distribution<int> pick_n(0, cfg.num_subchannels - 1);
  for (int it = 0; it < kPer; ++it) {
    if (it % 25 == 0) {
      step_user_positions(st, cfg, topo);
      sample_arrivals(st, cfg, arr);
    }
    const AllocationDecision d = random_repaired_decision(cfg, rng);
    const ChannelRealization g = sample_realization(st, cfg, fad);

    const int s = pick_s(rng);
    std::uniform_int_distribution<int> pick_k(0, cfg.users_per_class[s] - 1);
    const int k = pick_k(rng);
    const int c = pick_c(rng), n = pick_n(rng);
    worst = std::max(worst, rel_err(interference_at(d, g, cfg, s, k, c, n),
                                    oracle::interference(d, g, cfg, s, k, c, n)));
    ++n_intf;
    worst = std::max(worst, rel_err(user_sinr(d, g, cfg, s, k),
                                    oracle::user_sinr(d, g, cfg, s, k)));
    ++n_sinr;
    worst = std::max(worst, rel_err(power_consumption(d, cfg, s, c),
                                    oracle::power_used(d, cfg, s, c)));
    ++n_pow;
    worst = std::max(worst, rel_err(throughput_class1(d, g, cfg),
                                    oracle::throughput1(d, g, cfg)));
    ++n_thru;
  }

  const double secs = timer.s();
  const bool pass = worst < 1e-9 && secs < 60.0;
  report(1, "formula-oracles",
         pass,
         fmt("max rel err %.2e over %d instances/formula (%d/%d/%d/%d composite), %.1fs",
             worst, kPer, n_intf, n_sinr, n_pow, n_thru, secs));
}

// --- criterion 2: M/D/1 queueing validity ------------------------------------

void criterion_mdone() {
  Timer timer;
  const double A = 1e4;    // bits per packet
  const double R = 1e6;    // service rate, bps
  const double service_s = A / R;
  bool pass = true;
  std::string detail;
  for (const double util : {0.1, 0.5, 0.9}) {
    const double lam_bps = util * R;
    const double formula = lam_bps * A / (2.0 * (R * R - lam_bps * R));
    const double sim = oracle::mdone_sim_wait(lam_bps / A, service_s, 1000000,
                                              9000 + (int)(util * 10));
    const double err = rel_err(formula, sim);
    detail += fmt("u=%.1f err %.3f%% ", util, 100.0 * err);
    pass = pass && err < 0.05;
  }
  const double secs = timer.s();
  pass = pass && secs < 120.0;
  report(2, "mdone-queueing", pass, detail + fmt("(1e6 arrivals each, %.1fs)", secs));
}

// --- criterion 3: gradient correctness ----------------------------------------

double subsampled_grad_error(const std::vector<int>& dims, Rng& rng) {
  const Mlp net = init_mlp(dims, 1e-3, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(dims.front()), coef(dims.back());
  for (double& v : x) v = u(rng);
  for (double& v : coef) v = u(rng);

  auto loss = [&](const Mlp& m, const std::vector<double>& in) {
    const std::vector<double> y = forward(m, in).output();
    double L = 0.0;
    for (size_t i = 0; i < y.size(); ++i) L += coef[i] * y[i];
    return L;
  };

  Mlp work = net;
  const ForwardCache cache = forward(work, x);
  const Gradients g = backward(work, cache, coef);
  const double h = 1e-5;
  auto rel = [](double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-6});
  };

  // Flatten the parameter space, probe a random subset of coordinates.
  struct Coord {
    int layer;
    bool bias;
    int idx;
  };
  std::vector<Coord> coords;
  for (int l = 0; l < work.num_layers(); ++l) {
    for (size_t i = 0; i < work.w[l].v.size(); ++i)
      coords.push_back({l, false, (int)i});
    for (size_t i = 0; i < work.b[l].size(); ++i)
      coords.push_back({l, true, (int)i});
  }
  std::shuffle(coords.begin(), coords.end(), rng);
  const size_t probes = std::min<size_t>(coords.size(), 1200);

  double worst = 0.0;
  for (size_t q = 0; q < probes; ++q) {
    const Coord& c = coords[q];
    double& slot = c.bias ? work.b[c.layer][c.idx] : work.w[c.layer].v[c.idx];
    const double keep = slot;
    slot = keep + h;
    const double up = loss(work, x);
    slot = keep - h;
    const double dn = loss(work, x);
    slot = keep;
    const double want =
        c.bias ? g.db[c.layer][c.idx] : g.dw[c.layer].v[c.idx];
    worst = std::max(worst, rel((up - dn) / (2 * h), want));
  }
  // Every input coordinate.
  for (size_t i = 0; i < x.size(); ++i) {
    std::vector<double> xx = x;
    xx[i] = x[i] + h;
    const double up = loss(work, xx);
    xx[i] = x[i] - h;
    const double dn = loss(work, xx);
    worst = std::max(worst, rel((up - dn) / (2 * h), g.dx[i]));
  }
  return worst;
}

void criterion_gradients() {
  Timer timer;
  const ScenarioConfig cfg;  // K_s = 11, V = 3 reference layout
  const AgentLayout lay = make_layout(cfg);
  std::vector<std::vector<int>> shapes = {lay.central_actor_dims,
                                          lay.central_critic_dims,
                                          lay.dist_actor_dims[0],
                                          lay.dist_critic_dims[0]};
  Rng rng = make_stream(3001, "init");
  double worst = 0.0;
  for (const std::vector<int>& dims : shapes)
    for (int draw = 0; draw < 5; ++draw)
      worst = std::max(worst, subsampled_grad_error(dims, rng));
  report(3, "gradient-check", worst < 1e-4,
         fmt("max rel err %.2e over %zu shapes x 5 draws, %.1fs", worst,
             shapes.size(), timer.s()));
}

// --- criterion 4: constraint safety --------------------------------------------

void criterion_constraint_safety() {
  Timer timer;
  const ScenarioConfig cfg;
  Rng rng = make_stream(4001, "sampling");
  int violations = 0;
  const int kTrials = 10000;
  for (int i = 0; i < kTrials; ++i) {
    const AllocationDecision d = random_repaired_decision(cfg, rng);
    const ViolationReport rep = check_constraints(d, cfg);
    violations += (int)rep.items.size();
    if (i % 200 == 0)  // independent audit on a subsample
      violations += (int)oracle::violated(d, cfg).size();
  }
  report(4, "constraint-safety", violations == 0,
         fmt("%d violations over %d repaired decodes, %.1fs", violations,
             kTrials, timer.s()));
}

// --- criterion 5: rank-vote optimality ------------------------------------------

void criterion_rank_vote() {
  Timer timer;
  Rng rng = make_stream(5001, "sampling");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 200);
  int dominated = 0;
  const int kWindows = 1000;
  for (int w = 0; w < kWindows; ++w) {
    std::vector<std::array<double, 3>> win(size(rng));
    for (auto& p : win) p = {u(rng), u(rng), u(rng)};
    int best = 0;
    double best_chi = -1.0;
    for (size_t i = 0; i < win.size(); ++i) {
      const double chi = central_reward(win, (int)i);
      if (chi > best_chi) {
        best_chi = chi;
        best = (int)i;
      }
    }
    for (const auto& q : win)
      if (oracle::dominates(q, win[best])) {
        ++dominated;
        break;
      }
  }
  report(5, "rank-vote-optimality", dominated == 0,
         fmt("%d dominated maxima in %d windows (size <= 200), %.1fs",
             dominated, kWindows, timer.s()));
}

// --- criterion 6: complexity model ----------------------------------------------

void criterion_complexity() {
  Timer timer;
  bool pass = true;
  std::string note;
  for (const int K : {5, 9, 11, 13, 15, 17, 21})
    for (const int V : {1, 2, 3, 5}) {
      ScenarioConfig cfg;
      cfg.users_per_class = {K, K, K};
      cfg.num_vuav = V;
      const double per_iter =
          complexity_estimate(cdmaddpg_layout_dims(cfg), 1, 1);
      const double closed = 3600.0 * K + 400.0 * V + 83400.0;
      if (rel_err(per_iter, closed) > 1e-12) {
        pass = false;
        note += fmt("K=%d V=%d got %.0f want %.0f; ", K, V, per_iter, closed);
      }
      // Leading coefficient: per-iteration cost net of the constant block.
      if (rel_err(per_iter - 83400.0, 400.0 * (9.0 * K + V)) > 1e-12)
        pass = false;
      if (rel_err(complexity_estimate(cdmaddpg_layout_dims(cfg), 17, 23),
                  per_iter * 17 * 23) > 1e-12)
        pass = false;
    }
  ScenarioConfig ref;
  const double ref_cost = complexity_estimate(cdmaddpg_layout_dims(ref), 1, 1);
  if (ref_cost != 124200.0) {
    pass = false;
    note += fmt("reference cost %.1f != 124200; ", ref_cost);
  }
  report(6, "complexity-model", pass,
         note.empty() ? fmt("3600K+400V+83400 holds on 7x4 grid, ref 124200, %.1fs",
                            timer.s())
                      : note);
}

// --- criterion 7: layout conformance --------------------------------------------

void criterion_layouts() {
  Timer timer;
  bool pass = true;
  std::string note;
  for (const int K : {9, 11, 13, 15, 17}) {
    ScenarioConfig cfg;
    cfg.users_per_class = {K, K, K};
    const AgentLayout lay = make_layout(cfg);
    const bool ok = lay.central_obs_len == 3 + 6 * K &&
                    lay.central_act_len == 12 + 2 * 3 &&
                    lay.central_critic_dims.front() == 15 + 6 * K + 2 * 3 &&
                    lay.dist_obs_len[0] == K && lay.dist_act_len[0] == 3 * K &&
                    lay.dist_critic_dims[0].front() == 4 * K &&
                    lay.central_actor_dims ==
                        std::vector<int>{3 + 6 * K, 100, 100, 18} &&
                    lay.dist_actor_dims[2] ==
                        std::vector<int>{K, 100, 100, 3 * K};
    if (!ok) {
      pass = false;
      note += fmt("K=%d mismatch; ", K);
    }
  }
  report(7, "layout-conformance", pass,
         note.empty() ? fmt("obs/act/critic widths hold for K in {9..17}, %.1fs",
                            timer.s())
                      : note);
}

// --- criterion 8: convergence trend ----------------------------------------------

void criterion_convergence() {
  Timer timer;
  std::array<int, 3> improved = {0, 0, 0};
  double worst_seed_s = 0.0;
  const int kSeeds = 3;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    Timer per_seed;
    ScenarioConfig cfg;
    cfg.users_per_class = {9, 9, 9};
    cfg.episodes = 5;
    cfg.timesteps = 200;
    cfg.seed = (uint64_t)seed;
    const TrainingArtifacts art = run_training(cfg);
    const size_t n = art.trace.size(), fifth = n / 5;
    for (int r = 0; r < 3; ++r) {
      const double first = mean_range(art.trace, 0, fifth, r);
      const double last = mean_range(art.trace, n - fifth, n, r);
      if (last >= first) ++improved[r];
    }
    worst_seed_s = std::max(worst_seed_s, per_seed.s());
  }
  const bool pass = improved[0] >= 2 && improved[1] >= 2 && improved[2] >= 2 &&
                    worst_seed_s < 600.0;
  report(8, "convergence-trend", pass,
         fmt("last-20%% >= first-20%% in %d/%d, %d/%d, %d/%d seeds; %.0fs/seed, %.0fs total",
             improved[0], kSeeds, improved[1], kSeeds, improved[2], kSeeds,
             worst_seed_s, timer.s()));
}

// --- criterion 9: load trends ------------------------------------------------------

AveragedMetrics desk_run(const std::array<int, 3>& users, double lam2,
                         uint64_t seed) {
  ScenarioConfig cfg;
  cfg.users_per_class = users;
  cfg.class2_arrival_bps = lam2;  // 0 keeps the derived default
  cfg.episodes = 1;
  cfg.timesteps = 80;
  cfg.seed = seed;
  return time_averaged_metrics(run_training(cfg).trace);
}

void criterion_load_trends() {
  Timer timer;
  int thru_ok = 0, sinr_ok = 0, delay_ok = 0;
  const int kSeeds = 10;
  for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const double t9 = desk_run({9, 9, 9}, 0.0, seed).r1sum_bps;
    const double t13 = desk_run({13, 9, 9}, 0.0, seed).r1sum_bps;
    const double t17 = desk_run({17, 9, 9}, 0.0, seed).r1sum_bps;
    if (t9 < t13 && t13 < t17) ++thru_ok;

    const double s9 = desk_run({9, 9, 9}, 0.0, 100 + seed).sinr3ave;
    const double s13 = desk_run({9, 9, 13}, 0.0, 100 + seed).sinr3ave;
    const double s17 = desk_run({9, 9, 17}, 0.0, 100 + seed).sinr3ave;
    if (s9 > s13 && s13 > s17) ++sinr_ok;

    const double d1 = desk_run({9, 9, 9}, 90e3, 200 + seed).d2ave_s;
    const double d4 = desk_run({9, 9, 9}, 360e3, 200 + seed).d2ave_s;
    if (d4 > d1) ++delay_ok;
  }
  const bool pass = thru_ok >= 7 && sinr_ok >= 7 && delay_ok >= 7;
  report(9, "load-trends", pass,
         fmt("K1 up->thru up %d/10; K3 up->sinr down %d/10; lam2 x4->delay up %d/10; %.0fs",
             thru_ok, sinr_ok, delay_ok, timer.s()));
}

// --- criterion 10: ablation ordering -----------------------------------------------

void criterion_ablations() {
  Timer timer;
  int all_ok = 0;
  std::array<int, 6> tally{};  // vs-single r1/d2/sinr, vs-fixed r1/d2/sinr
  const int kSeeds = 10;
  for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
    ScenarioConfig cfg;
    cfg.users_per_class = {9, 9, 9};
    cfg.episodes = 3;
    cfg.timesteps = 200;
    cfg.seed = seed;

    const AveragedMetrics full = time_averaged_metrics(run_training(cfg).trace);
    TrainOptions single;
    single.dual_repair = false;
    const AveragedMetrics sa =
        time_averaged_metrics(run_training(cfg, single).trace);
    TrainOptions fixed;
    fixed.learn_vuav = false;
    const AveragedMetrics fu =
        time_averaged_metrics(run_training(cfg, fixed).trace);

    const bool c0 = full.r1sum_bps >= sa.r1sum_bps;
    const bool c1 = full.d2ave_s <= sa.d2ave_s;
    const bool c2 = full.sinr3ave >= sa.sinr3ave;
    const bool c3 = full.r1sum_bps >= fu.r1sum_bps;
    const bool c4 = full.d2ave_s <= fu.d2ave_s;
    const bool c5 = full.sinr3ave >= fu.sinr3ave;
    tally[0] += c0;
    tally[1] += c1;
    tally[2] += c2;
    tally[3] += c3;
    tally[4] += c4;
    tally[5] += c5;
    if (c0 && c1 && c2 && c3 && c4 && c5) ++all_ok;
  }
  report(10, "ablation-ordering", all_ok >= 7,
         fmt("full beats both ablations on all metrics in %d/10 trials "
             "(vs single %d/%d/%d, vs fixed %d/%d/%d), %.0fs",
             all_ok, tally[0], tally[1], tally[2], tally[3], tally[4],
             tally[5], timer.s()));
}

// --- criterion 11: determinism -------------------------------------------------------

void criterion_determinism() {
  Timer timer;
  namespace fs = std::filesystem;
  ScenarioConfig cfg;
  cfg.users_per_class = {3, 3, 3};
  cfg.episodes = 1;
  cfg.timesteps = 10;
  cfg.hidden_width = 16;
  cfg.central_minibatch = 5;
  cfg.dist_minibatch = 5;
  cfg.seed = 77;
  const fs::path root = fs::temp_directory_path() / "sagin_acceptance_det";
  fs::remove_all(root);
  const std::string d1 = (root / "a").string(), d2 = (root / "b").string();
  const bool ran = cmd_train(cfg, d1) == 0 && cmd_train(cfg, d2) == 0;
  bool pass = false;
  if (ran) {
    const std::string m1 = read_file(d1 + "/metrics.csv");
    const std::string m2 = read_file(d2 + "/metrics.csv");
    const std::string man1 = read_file(d1 + "/manifest.txt");
    const std::string man2 = read_file(d2 + "/manifest.txt");
    pass = m1 == m2 && man1 == man2 && !m1.empty();
  }
  fs::remove_all(root);
  report(11, "determinism", pass,
         fmt("two executions, byte-identical metrics.csv + manifest: %s, %.1fs",
             pass ? "yes" : "no", timer.s()));
}

// --- criterion 12: satellite share audit (soft) ---------------------------------------

void criterion_vleo_share() {
  Timer timer;
  int favored = 0;
  const int kTrials = 10;
  for (uint64_t seed = 1; seed <= kTrials; ++seed) {
    ScenarioConfig cfg;
    cfg.users_per_class = {9, 9, 9};
    cfg.episodes = 2;
    cfg.timesteps = 150;
    cfg.seed = seed;
    const TrainingArtifacts art = run_training(cfg);

    // Greedy central policy over fresh states: average each class's vLEO
    // subchannel share.
    Rng topo = make_stream(cfg.seed + 9000, "topology");
    Rng arr = make_stream(cfg.seed + 9000, "arrivals");
    TopologyState st = init_topology(cfg, topo, arr);
    std::array<double, 3> mean_eta{};
    const int kStates = 40;
    for (int i = 0; i < kStates; ++i) {
      const std::vector<double> act =
          policy(art.agents[0], build_central_observation(st, cfg));
      const CentralCommand cmd = decode_central_action(act, cfg);
      for (int s = 0; s < kNumClasses; ++s) mean_eta[s] += cmd.eta[s][2];
      step_user_positions(st, cfg, topo);
      sample_arrivals(st, cfg, arr);
    }
    if (mean_eta[2] > mean_eta[0] && mean_eta[2] > mean_eta[1]) ++favored;
  }
  report(12, "vleo-share-audit", favored > kTrials / 2,
         fmt("coverage class holds the largest mean vLEO share in %d/%d trials, %.0fs",
             favored, kTrials, timer.s()),
         /*blocking=*/false);
}

}  // namespace

int main() {
  std::printf("acceptance: SAGIN slicing simulator\n");
  criterion_formula_oracles();
  criterion_mdone();
  criterion_gradients();
  criterion_constraint_safety();
  criterion_rank_vote();
  criterion_complexity();
  criterion_layouts();
  criterion_convergence();
  criterion_load_trends();
  criterion_ablations();
  criterion_determinism();
  criterion_vleo_share();
  std::printf("acceptance: %d blocking failure(s)\n", g_blocking_failures);
  return g_blocking_failures == 0 ? 0 : 1;
}

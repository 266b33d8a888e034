// orchestrator.cpp - codecs between agents and the environment, conflict
// repair, rank-voting rewards, and the training loops.
#include "sagin/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace sagin {

// --- layouts -----------------------------------------------------------------

namespace {
std::vector<int> with_hidden(int in, int out, const ScenarioConfig& cfg) {
  std::vector<int> dims{in};
  for (int l = 0; l < cfg.hidden_layers; ++l) dims.push_back(cfg.hidden_width);
  dims.push_back(out);
  return dims;
}
}  // namespace

AgentLayout make_layout(const ScenarioConfig& cfg) {
  AgentLayout L;
  L.central_obs_len = kNumClasses + 2 * cfg.total_users();
  L.central_act_len = 12 + 2 * cfg.num_vuav;
  L.central_actor_dims = with_hidden(L.central_obs_len, L.central_act_len, cfg);
  L.central_critic_dims =
      with_hidden(L.central_obs_len + L.central_act_len, 1, cfg);
  for (int s = 0; s < kNumClasses; ++s) {
    const int K = cfg.users_per_class[s];
    L.dist_obs_len[s] = K;
    L.dist_act_len[s] = 3 * K;
    L.dist_actor_dims[s] = with_hidden(K, 3 * K, cfg);
    L.dist_critic_dims[s] = with_hidden(4 * K, 1, cfg);
  }
  return L;
}

std::vector<AgentLayoutDims> cdmaddpg_layout_dims(const ScenarioConfig& cfg) {
  const AgentLayout L = make_layout(cfg);
  std::vector<AgentLayoutDims> out;
  out.push_back({L.central_actor_dims, L.central_critic_dims});
  for (int s = 0; s < kNumClasses; ++s)
    out.push_back({L.dist_actor_dims[s], L.dist_critic_dims[s]});
  return out;
}

std::vector<AgentLayoutDims> maddpg_layout_dims(const ScenarioConfig& cfg) {
  const int central_len = 12 + 2 * cfg.num_vuav;
  int total_act = 0;
  for (int s = 0; s < kNumClasses; ++s)
    total_act += 3 * cfg.users_per_class[s] + central_len;
  std::vector<AgentLayoutDims> out;
  for (int s = 0; s < kNumClasses; ++s) {
    const int obs = 3 * cfg.users_per_class[s];
    const int act = 3 * cfg.users_per_class[s] + central_len;
    out.push_back({with_hidden(obs, act, cfg), with_hidden(obs + total_act, 1, cfg)});
  }
  return out;
}

// --- observations --------------------------------------------------------------

std::vector<double> build_central_observation(const TopologyState& st,
                                              const ScenarioConfig& cfg) {
  std::vector<double> o;
  o.reserve(kNumClasses + 2 * cfg.total_users());
  const double mean_bits = cfg.per_user_arrival_bps() * cfg.slot_s;
  for (int s = 0; s < kNumClasses; ++s) {
    double agg = 0.0;
    for (double a : st.arrivals_bits[s]) agg += a;
    const double scale = 2.0 * cfg.users_per_class[s] * mean_bits;
    o.push_back(scale > 0.0 ? std::clamp(agg / scale, 0.0, 1.0) : 0.0);
  }
  for (int s = 0; s < kNumClasses; ++s)
    for (const Vec2& u : st.user_xy[s]) {
      o.push_back(u.x / cfg.area_side_m);
      o.push_back(u.y / cfg.area_side_m);
    }
  return o;
}

std::vector<double> build_distributed_observation(const TopologyState& st,
                                                  const ScenarioConfig& cfg, int s) {
  const double mean_bits = cfg.per_user_arrival_bps() * cfg.slot_s;
  const double scale = 5.0 * mean_bits;
  std::vector<double> o;
  o.reserve(cfg.users_per_class[s]);
  for (double a : st.arrivals_bits[s])
    o.push_back(scale > 0.0 ? std::clamp(a / scale, 0.0, 1.0) : 0.0);
  return o;
}

// --- central codec ---------------------------------------------------------------

namespace {

constexpr double kShareGain = 3.0;  // spread of the exp transform

// Two raws in [0,1] -> three positive shares summing to 1, each >= floor;
// (0.5, 0.5) maps to exact thirds.
std::array<double, 3> shares_from_raw(double u1, double u2, double floor_) {
  const double g1 = std::exp(kShareGain * (std::clamp(u1, 0.0, 1.0) - 0.5));
  const double g2 = std::exp(kShareGain * (std::clamp(u2, 0.0, 1.0) - 0.5));
  const double g3 = 1.0;
  const double sum = g1 + g2 + g3;
  const double head = 1.0 - 3.0 * floor_;
  return {floor_ + head * g1 / sum, floor_ + head * g2 / sum,
          floor_ + head * g3 / sum};
}

std::array<double, 2> raw_from_shares(const std::array<double, 3>& s, double floor_) {
  const double a = s[0] - floor_, b = s[1] - floor_, c = s[2] - floor_;
  if (a <= 0.0 || b <= 0.0 || c <= 0.0)
    throw std::invalid_argument("raw_from_shares: shares must exceed the floor");
  return {0.5 + std::log(a / c) / kShareGain, 0.5 + std::log(b / c) / kShareGain};
}

}  // namespace

void repair_vuav_spacing(std::vector<Vec2>& xy, const ScenarioConfig& cfg) {
  const double dmin = cfg.vuav_min_spacing_m;
  const int V = (int)xy.size();
  for (int pass = 0; pass < 100; ++pass) {
    bool ok = true;
    for (int i = 0; i < V; ++i)
      for (int j = i + 1; j < V; ++j) {
        double dx = xy[j].x - xy[i].x, dy = xy[j].y - xy[i].y;
        double dd = std::hypot(dx, dy);
        if (dd >= dmin) continue;
        ok = false;
        if (dd < 1e-9) {  // coincident: deterministic separation direction
          const double ang = 2.399963229728653 * (i * V + j + 1);  // golden angle
          dx = std::cos(ang);
          dy = std::sin(ang);
          dd = 1.0;
        } else {
          dx /= dd;
          dy /= dd;
        }
        const double push = 0.5 * (dmin - std::min(dd, dmin)) + 1e-6;
        xy[i].x = std::clamp(xy[i].x - push * dx, 0.0, cfg.area_side_m);
        xy[i].y = std::clamp(xy[i].y - push * dy, 0.0, cfg.area_side_m);
        xy[j].x = std::clamp(xy[j].x + push * dx, 0.0, cfg.area_side_m);
        xy[j].y = std::clamp(xy[j].y + push * dy, 0.0, cfg.area_side_m);
      }
    if (ok) return;
  }
  xy = cfg.vuav_start_xy;  // start coordinates are validated conflict-free
}

CentralCommand decode_central_action(const std::vector<double>& raw,
                                     const ScenarioConfig& cfg) {
  const int want = 12 + 2 * cfg.num_vuav;
  if ((int)raw.size() != want)
    throw std::invalid_argument("decode_central_action: raw length " +
                                std::to_string(raw.size()) + " != " +
                                std::to_string(want));
  CentralCommand cmd;
  // Raw layout: rho blocks for the 3 component types, then eta blocks, each
  // block two raws (classes 1 and 2; class 3 takes the remainder).
  for (int ct = 0; ct < 3; ++ct) {
    const auto rho = shares_from_raw(raw[2 * ct], raw[2 * ct + 1], cfg.share_floor);
    const auto eta =
        shares_from_raw(raw[6 + 2 * ct], raw[6 + 2 * ct + 1], cfg.share_floor);
    for (int s = 0; s < kNumClasses; ++s) {
      cmd.rho[s][ct] = rho[s];
      cmd.eta[s][ct] = eta[s];
    }
  }
  cmd.vuav_xy.resize(cfg.num_vuav);
  for (int v = 0; v < cfg.num_vuav; ++v) {
    cmd.vuav_xy[v].x = std::clamp(raw[12 + 2 * v], 0.0, 1.0) * cfg.area_side_m;
    cmd.vuav_xy[v].y = std::clamp(raw[12 + 2 * v + 1], 0.0, 1.0) * cfg.area_side_m;
  }
  repair_vuav_spacing(cmd.vuav_xy, cfg);
  return cmd;
}

std::vector<double> encode_central_command(const CentralCommand& cmd,
                                           const ScenarioConfig& cfg) {
  std::vector<double> raw(12 + 2 * cfg.num_vuav);
  for (int ct = 0; ct < 3; ++ct) {
    const auto ur = raw_from_shares(
        {cmd.rho[0][ct], cmd.rho[1][ct], cmd.rho[2][ct]}, cfg.share_floor);
    const auto ue = raw_from_shares(
        {cmd.eta[0][ct], cmd.eta[1][ct], cmd.eta[2][ct]}, cfg.share_floor);
    raw[2 * ct] = ur[0];
    raw[2 * ct + 1] = ur[1];
    raw[6 + 2 * ct] = ue[0];
    raw[6 + 2 * ct + 1] = ue[1];
  }
  for (int v = 0; v < cfg.num_vuav; ++v) {
    raw[12 + 2 * v] = cmd.vuav_xy[v].x / cfg.area_side_m;
    raw[12 + 2 * v + 1] = cmd.vuav_xy[v].y / cfg.area_side_m;
  }
  return raw;
}

// --- distributed codec -------------------------------------------------------------

void decode_distributed_action(const std::vector<double>& raw, int s,
                               const CentralCommand& cmd, const ScenarioConfig& cfg,
                               AllocationDecision& d) {
  const int K = cfg.users_per_class[s];
  if ((int)raw.size() != 3 * K)
    throw std::invalid_argument("decode_distributed_action: raw length " +
                                std::to_string(raw.size()) + " != " +
                                std::to_string(3 * K));
  const ResourcePools pools =
      make_pools(cmd.eta, cfg.num_subchannels, cfg.num_vbs, cfg.num_vuav);
  const int C = d.num_components();
  std::vector<double> remaining(C);
  for (int c = 0; c < C; ++c) {
    const CompType t = comp_type(c, cfg);
    remaining[c] = cmd.rho[s][(int)t] * comp_power_budget(t, cfg);
  }
  for (int k = 0; k < K; ++k) {
    const double u1 = std::clamp(raw[3 * k], 0.0, 1.0);
    const double u2 = std::clamp(raw[3 * k + 1], 0.0, 1.0);
    const double u3 = std::clamp(raw[3 * k + 2], 0.0, 1.0);
    const int c = std::min((int)(u1 * C), C - 1);
    const int W = pools.width[s][c];
    if (W == 0) continue;  // no subchannels for this class on that layer
    const int n = pools.slot(s, c, std::min((int)(u2 * W), W - 1));
    d.phi[s](k, c) = 1.0;
    d.xi[s](k, n) = 1.0;
    const double p = u3 * remaining[c];
    d.power[s](k, c, n) = p;
    remaining[c] -= p;
  }
}

AllocationDecision assemble_decision(const CentralCommand& cmd,
                                     const std::array<std::vector<double>, 3>& raws,
                                     const ScenarioConfig& cfg) {
  AllocationDecision d = AllocationDecision::zeros(cfg);
  d.eta = cmd.eta;
  d.rho = cmd.rho;
  d.vuav_xy = cmd.vuav_xy;
  for (int s = 0; s < kNumClasses; ++s)
    decode_distributed_action(raws[s], s, cmd, cfg, d);
  return d;
}

// --- dual resource allocation ---------------------------------------------------------

namespace {

std::array<double, 3> sanitize_shares(std::array<double, 3> v, double floor_) {
  const double ef = std::max(floor_, 1e-9);
  double sum = 0.0;
  for (double& x : v) {
    if (!std::isfinite(x) || x < ef) x = ef;
    sum += x;
  }
  if (std::fabs(sum - 1.0) <= 1e-12) return v;
  const double excess = sum - 3.0 * ef;
  if (excess <= 0.0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  for (double& x : v) x = ef + (x - ef) * (1.0 - 3.0 * ef) / excess;
  return v;
}

}  // namespace

RepairOutcome dual_resource_allocation(const AllocationDecision& in,
                                       const ScenarioConfig& cfg, bool reassign) {
  RepairOutcome out;
  out.decision = in;
  AllocationDecision& d = out.decision;
  const int C = d.num_components();
  const int N = d.N;

  // Factor sanitation (no-op for codec output).
  for (int ct = 0; ct < 3; ++ct) {
    const auto eta = sanitize_shares(
        {d.eta[0][ct], d.eta[1][ct], d.eta[2][ct]}, cfg.share_floor);
    const auto rho = sanitize_shares(
        {d.rho[0][ct], d.rho[1][ct], d.rho[2][ct]}, cfg.share_floor);
    for (int s = 0; s < kNumClasses; ++s) {
      d.eta[s][ct] = eta[s];
      d.rho[s][ct] = rho[s];
    }
  }
  const ResourcePools pools = make_pools(d.eta, N, d.M, d.V);

  // Indicator/power sanitation and single-(c,n) enforcement per user.
  for (int s = 0; s < kNumClasses; ++s) {
    const int K = d.xi[s].rows;
    for (int k = 0; k < K; ++k) {
      int first_c = -1, first_n = -1;
      for (int c = 0; c < C; ++c) {
        double& x = d.phi[s](k, c);
        x = (std::isfinite(x) && x >= 0.5) ? 1.0 : 0.0;
        if (x == 1.0) {
          if (first_c < 0) first_c = c;
          else x = 0.0;
        }
      }
      for (int n = 0; n < N; ++n) {
        double& x = d.xi[s](k, n);
        x = (std::isfinite(x) && x >= 0.5) ? 1.0 : 0.0;
        if (x == 1.0) {
          if (first_n < 0) first_n = n;
          else x = 0.0;
        }
      }
      for (int c = 0; c < C; ++c)
        for (int n = 0; n < N; ++n) {
          double& p = d.power[s](k, c, n);
          if (!std::isfinite(p) || p < 0.0) p = 0.0;
        }
    }
  }

  // Budget headroom per (class, component) from currently masked powers.
  std::array<std::vector<double>, kNumClasses> remaining;
  for (int s = 0; s < kNumClasses; ++s) {
    remaining[s].resize(C);
    for (int c = 0; c < C; ++c) {
      const CompType t = comp_type(c, cfg);
      remaining[s][c] = d.rho[s][(int)t] * comp_power_budget(t, cfg) -
                        power_consumption(d, cfg, s, c);
    }
  }

  // Claim slots in (class, user) order; later claimants and out-of-pool users
  // go through the second allocation round.
  for (int s = 0; s < kNumClasses; ++s) {
    const int K = d.xi[s].rows;
    std::vector<std::vector<int>> occupant(C, std::vector<int>(N, -1));
    std::vector<int> pending;
    auto assignment_of = [&](int k) {
      int uc = -1, un = -1;
      for (int c = 0; c < C; ++c)
        if (d.phi[s](k, c) == 1.0) uc = c;
      for (int n = 0; n < N; ++n)
        if (d.xi[s](k, n) == 1.0) un = n;
      return std::pair<int, int>(uc, un);
    };
    for (int k = 0; k < K; ++k) {
      const auto [c, n] = assignment_of(k);
      if (c < 0 || n < 0) continue;
      if (pools.contains(s, c, n) && occupant[c][n] < 0) occupant[c][n] = k;
      else pending.push_back(k);
    }
    for (int k : pending) {
      const auto [c, n] = assignment_of(k);
      const double p_orig = d.power[s](k, c, n);
      auto idle_slot_on = [&](int cc) {
        for (int j = 0; j < pools.width[s][cc]; ++j) {
          const int nn = pools.slot(s, cc, j);
          if (occupant[cc][nn] < 0) return nn;
        }
        return -1;
      };
      bool placed = false;
      if (reassign) {
        const int same_n = idle_slot_on(c);
        if (same_n >= 0) {
          d.xi[s](k, n) = 0.0;
          d.xi[s](k, same_n) = 1.0;
          d.power[s](k, c, n) = 0.0;
          d.power[s](k, c, same_n) = p_orig;  // same budget pool
          occupant[c][same_n] = k;
          placed = true;
        } else {
          for (int cc = 0; cc < C && !placed; ++cc) {
            if (cc == c) continue;
            const int nn = idle_slot_on(cc);
            if (nn < 0) continue;
            remaining[s][c] += p_orig;  // free the old charge
            const double p_new = std::min(p_orig, std::max(remaining[s][cc], 0.0));
            d.phi[s](k, c) = 0.0;
            d.phi[s](k, cc) = 1.0;
            d.xi[s](k, n) = 0.0;
            d.xi[s](k, nn) = 1.0;
            d.power[s](k, c, n) = 0.0;
            d.power[s](k, cc, nn) = p_new;
            remaining[s][cc] -= p_new;
            occupant[cc][nn] = k;
            placed = true;
          }
        }
      }
      if (!placed) {  // zero out; the losing action keeps a token power value
        const int ct = (int)comp_type(c, cfg);
        const double share =
            0.01 * d.rho[s][ct] * comp_power_budget(comp_type(c, cfg), cfg);
        remaining[s][c] += p_orig;
        for (int nn = 0; nn < N; ++nn) d.xi[s](k, nn) = 0.0;
        for (int cc = 0; cc < C; ++cc) d.phi[s](k, cc) = 0.0;
        d.power[s](k, c, n) = std::min(p_orig, share);
        ++out.zeroed;
        continue;
      }
      ++out.moved;
    }
  }

  // Budget pass: proportional scale-down wherever masked power still exceeds
  // the share (cannot trigger for codec output).
  for (int s = 0; s < kNumClasses; ++s)
    for (int c = 0; c < C; ++c) {
      const CompType t = comp_type(c, cfg);
      const double budget = d.rho[s][(int)t] * comp_power_budget(t, cfg);
      const double used = power_consumption(d, cfg, s, c);
      if (used > budget) {
        const double f = budget / used * (1.0 - 1e-12);
        for (int k = 0; k < d.xi[s].rows; ++k) {
          if (d.phi[s](k, c) == 0.0) continue;
          for (int n = 0; n < N; ++n)
            if (d.xi[s](k, n) == 1.0) d.power[s](k, c, n) *= f;
        }
      }
    }

  repair_vuav_spacing(d.vuav_xy, cfg);
  return out;
}

// --- rewards -----------------------------------------------------------------------

void MinMaxNormalizer::update(const std::array<double, 3>& metrics) {
  if (!seen) {
    lo = hi = metrics;
    seen = true;
    return;
  }
  for (int i = 0; i < 3; ++i) {
    lo[i] = std::min(lo[i], metrics[i]);
    hi[i] = std::max(hi[i], metrics[i]);
  }
}

double MinMaxNormalizer::norm(int metric, double v) const {
  if (!seen || hi[metric] <= lo[metric]) return 0.5;
  return std::clamp((v - lo[metric]) / (hi[metric] - lo[metric]), 0.0, 1.0);
}

std::string MinMaxNormalizer::to_text() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d %.17g %.17g %.17g %.17g %.17g %.17g\n",
                seen ? 1 : 0, lo[0], lo[1], lo[2], hi[0], hi[1], hi[2]);
  return buf;
}

MinMaxNormalizer MinMaxNormalizer::from_text(const std::string& text) {
  MinMaxNormalizer nz;
  int seen_flag = 0;
  if (std::sscanf(text.c_str(), "%d %lg %lg %lg %lg %lg %lg", &seen_flag, &nz.lo[0],
                  &nz.lo[1], &nz.lo[2], &nz.hi[0], &nz.hi[1], &nz.hi[2]) != 7)
    throw std::runtime_error("MinMaxNormalizer::from_text: bad format");
  nz.seen = seen_flag != 0;
  return nz;
}

double compress_metric(double v) { return std::log1p(std::max(v, 0.0)); }

double distributed_reward(const SliceMetrics& m, int s, const MinMaxNormalizer& nz) {
  switch (s) {
    case 0: return nz.norm(0, compress_metric(m.r1sum_bps));
    case 1: return 1.0 - nz.norm(1, compress_metric(m.d2ave_s));
    case 2: return nz.norm(2, compress_metric(m.sinr3ave));
    default: throw std::invalid_argument("distributed_reward: bad class");
  }
}

double central_reward(const std::vector<std::array<double, 3>>& window, int current) {
  if (window.empty()) throw std::invalid_argument("central_reward: empty window");
  if (current < 0 || current >= (int)window.size())
    throw std::out_of_range("central_reward: current outside window");
  double total = 0.0;
  std::vector<double> col(window.size());
  for (int j = 0; j < 3; ++j) {
    for (size_t i = 0; i < window.size(); ++i) col[i] = window[i][j];
    total += asc_rank(col, current);
  }
  return total;
}

// --- environment helpers --------------------------------------------------------------

namespace {

std::array<double, 3> compressed_metrics(const SliceMetrics& m) {
  return {compress_metric(m.r1sum_bps), compress_metric(m.d2ave_s),
          compress_metric(m.sinr3ave)};
}

struct EnvStep {
  AllocationDecision decision;
  SliceMetrics metrics;
  int repairs = 0;
};

void apply_command(TopologyState& st, const CentralCommand& cmd,
                   const ScenarioConfig& cfg) {
  for (int v = 0; v < cfg.num_vuav; ++v)
    st.vuav_xyz[v] = {cmd.vuav_xy[v].x, cmd.vuav_xy[v].y, cfg.vuav_altitude_m};
}

EnvStep env_evaluate(TopologyState& st, const CentralCommand& cmd,
                     const std::array<std::vector<double>, 3>& raws,
                     const ScenarioConfig& cfg, Rng& fading, bool dual_repair) {
  apply_command(st, cmd, cfg);
  const ChannelRealization g = sample_realization(st, cfg, fading);
  RepairOutcome rep =
      dual_resource_allocation(assemble_decision(cmd, raws, cfg), cfg, dual_repair);
  const ViolationReport vr = check_constraints(rep.decision, cfg);
  if (!vr.clean())
    throw std::logic_error("env_evaluate: repaired decision violates " +
                           vr.items.front().constraint + " (" +
                           vr.items.front().detail + ")");
  EnvStep step;
  step.metrics = compute_metrics(rep.decision, g, st, cfg);
  step.decision = std::move(rep.decision);
  step.repairs = rep.total();
  return step;
}

void env_advance(TopologyState& st, const ScenarioConfig& cfg, Rng& topo,
                 Rng& arrivals) {
  step_user_positions(st, cfg, topo);
  sample_arrivals(st, cfg, arrivals);
  st.t += 1;
}

double sigma_at(const ScenarioConfig& cfg, long long step, long long total) {
  if (total <= 1) return cfg.explore_sigma_start;
  const double f = (double)step / (double)(total - 1);
  return cfg.explore_sigma_start +
         (cfg.explore_sigma_end - cfg.explore_sigma_start) * f;
}

std::vector<Vec2> fixed_positions(const TrainOptions& opts,
                                  const ScenarioConfig& cfg) {
  std::vector<Vec2> xy =
      opts.fixed_vuav_xy.empty() ? cfg.vuav_start_xy : opts.fixed_vuav_xy;
  repair_vuav_spacing(xy, cfg);
  return xy;
}

// Four-tuple stored in the central replay memory (plus provenance for the
// Pareto stream).
struct CentralExperience {
  std::vector<double> obs, act, next_obs;
  std::array<double, 3> rewards{};
  std::array<double, 3> objectives{};
  std::array<std::vector<double>, 3> dist_actions;
  int episode = 0, t = 0;
};

void collect_pareto(const ReplayBuffer<CentralExperience>& mem,
                    std::vector<ParetoCandidate>& out,
                    std::set<std::pair<int, int>>& seen) {
  // Dominance is decided on the raw objective triples: rewards normalized
  // against a still-moving window are not comparable across timesteps.
  std::vector<std::array<double, 3>> objs(mem.size());
  for (int i = 0; i < mem.size(); ++i) objs[i] = mem[i].objectives;
  for (int i : nondominated_filter(objs)) {
    const CentralExperience& e = mem[i];
    if (!seen.insert({e.episode, e.t}).second) continue;
    ParetoCandidate c;
    c.rewards = e.rewards;
    c.objectives = e.objectives;
    c.central_action = e.act;
    c.dist_actions = e.dist_actions;
    c.episode = e.episode;
    c.t = e.t;
    out.push_back(std::move(c));
  }
  // Candidates gathered in different episodes can dominate each other; keep the
  // accumulated set globally nondominated.
  std::vector<std::array<double, 3>> merged(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) merged[i] = out[i].objectives;
  std::vector<ParetoCandidate> kept;
  for (int i : nondominated_filter(merged)) kept.push_back(std::move(out[i]));
  out = std::move(kept);
}

// Symmetry breaking for cold-start policies. A freshly initialized sigmoid
// actor emits ~0.5 on every output, which folds all same-class users onto one
// component (and every exploration-noise decay then RAISES collisions as the
// scatter vanishes). Spreading the output-layer biases of the per-user action
// block [begin, end) gives the initial deterministic policy diverse
// assignments; central-command outputs are left alone so resource shares keep
// their balanced starting point. The target is re-synced so learning starts
// from a consistent pair.
void diversify_policy_outputs(DdpgAgent& agent, int begin, int end, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<double>& bias = agent.actor.b.back();
  for (int i = begin; i < end && i < (int)bias.size(); ++i) bias[i] = u(rng);
  soft_update(agent.actor_target, agent.actor, 1.0);
}

// Bias the coordinate outputs (the 2V raws after the 12 share raws) so the
// initial deterministic policy places the vUAVs at their configured start
// coordinates instead of folding them all onto the area centre. Placement
// learning then starts from the same geometry a fixed-placement scheme uses.
void seed_vuav_placement_prior(DdpgAgent& agent, int coord_begin,
                               const ScenarioConfig& cfg) {
  std::vector<double>& bias = agent.actor.b.back();
  for (int v = 0; v < cfg.num_vuav; ++v) {
    const double fx =
        std::clamp(cfg.vuav_start_xy[v].x / cfg.area_side_m, 0.02, 0.98);
    const double fy =
        std::clamp(cfg.vuav_start_xy[v].y / cfg.area_side_m, 0.02, 0.98);
    const int ix = coord_begin + 2 * v;
    if (ix + 1 >= (int)bias.size()) break;
    bias[ix] = std::log(fx / (1.0 - fx));       // sigmoid^-1
    bias[ix + 1] = std::log(fy / (1.0 - fy));
  }
  soft_update(agent.actor_target, agent.actor, 1.0);
}

// Re-express logged rewards against the final experiment-wide window so the
// whole trace is one consistent transform of the raw metrics (the agents
// necessarily trained on the running approximation). Exactly recomputable from
// the logged raw columns plus the persisted normalizer.
void finalize_trace_rewards(TrainingArtifacts& art, const ScenarioConfig& cfg) {
  for (MetricsRow& row : art.trace) {
    SliceMetrics m;
    m.r1sum_bps = row.r1sum_bps;
    m.d2ave_s = row.d2ave_s;
    m.sinr3ave = row.sinr3ave;
    row.reward1 = distributed_reward(m, 0, art.normalizer);
    row.reward2 = distributed_reward(m, 1, art.normalizer);
    row.reward3 = distributed_reward(m, 2, art.normalizer);
  }
  for (ParetoCandidate& c : art.pareto) {
    SliceMetrics m;
    m.r1sum_bps = c.objectives[0];
    m.d2ave_s = cfg.delay_budget_s - c.objectives[1];
    m.sinr3ave = c.objectives[2];
    for (int s = 0; s < kNumClasses; ++s)
      c.rewards[s] = distributed_reward(m, s, art.normalizer);
  }
}

}  // namespace

// --- the proposed scheme -----------------------------------------------------------

TrainingArtifacts run_training(const ScenarioConfig& cfg, const TrainOptions& opts) {
  validate_config(cfg);
  RngStreams rng(cfg.seed);
  const AgentLayout L = make_layout(cfg);

  TrainingArtifacts art;
  art.agents.push_back(make_agent(L.central_actor_dims, L.central_critic_dims,
                                  cfg.actor_lr, cfg.critic_lr, cfg.gamma, cfg.tau,
                                  rng.init));
  for (int s = 0; s < kNumClasses; ++s)
    art.agents.push_back(make_agent(L.dist_actor_dims[s], L.dist_critic_dims[s],
                                    cfg.actor_lr, cfg.critic_lr, cfg.gamma, cfg.tau,
                                    rng.init));
  for (int s = 0; s < kNumClasses; ++s) {
    DdpgAgent& a = art.agents[1 + s];
    diversify_policy_outputs(a, 0, a.act_len(), rng.init);
  }
  seed_vuav_placement_prior(art.agents[0], 12, cfg);
  DdpgAgent& central = art.agents[0];

  ReplayBuffer<CentralExperience> mem1(cfg.central_buffer_capacity);
  std::vector<ReplayBuffer<Transition>> memd;
  for (int s = 0; s < kNumClasses; ++s)
    memd.emplace_back(cfg.dist_buffer_capacity);

  const std::vector<Vec2> pinned = fixed_positions(opts, cfg);
  const long long total_steps = (long long)cfg.episodes * cfg.timesteps;
  long long step_idx = 0;
  std::set<std::pair<int, int>> pareto_seen;

  for (int e = 0; e < cfg.episodes; ++e) {
    TopologyState st = init_topology(cfg, rng.topology, rng.arrivals);
    for (int t = 0; t < cfg.timesteps; ++t) {
      try {
        const double sigma = opts.explore ? sigma_at(cfg, step_idx, total_steps) : 0.0;
        const std::vector<double> o1 = build_central_observation(st, cfg);
        std::array<std::vector<double>, 3> od;
        for (int s = 0; s < kNumClasses; ++s)
          od[s] = build_distributed_observation(st, cfg, s);

        const std::vector<double> a1 =
            select_action(central, o1, sigma, cfg.noise_kind, rng.noise);
        CentralCommand cmd = decode_central_action(a1, cfg);
        if (!opts.learn_vuav) cmd.vuav_xy = pinned;
        std::array<std::vector<double>, 3> ad;
        for (int s = 0; s < kNumClasses; ++s)
          ad[s] = select_action(art.agents[1 + s], od[s], sigma, cfg.noise_kind,
                                rng.noise);

        EnvStep step = env_evaluate(st, cmd, ad, cfg, rng.fading, opts.dual_repair);

        art.normalizer.update(compressed_metrics(step.metrics));
        std::array<double, 3> r;
        for (int s = 0; s < kNumClasses; ++s)
          r[s] = distributed_reward(step.metrics, s, art.normalizer);

        env_advance(st, cfg, rng.topology, rng.arrivals);
        const std::vector<double> o1_next = build_central_observation(st, cfg);

        for (int s = 0; s < kNumClasses; ++s) {
          Transition tr;
          tr.obs = od[s];
          tr.act = ad[s];
          tr.reward = r[s];
          tr.next_obs = build_distributed_observation(st, cfg, s);
          memd[s].push(std::move(tr));
        }
        CentralExperience ce;
        ce.obs = o1;
        ce.act = a1;
        ce.next_obs = o1_next;
        ce.rewards = r;
        ce.objectives = step.metrics.objective();
        ce.dist_actions = ad;
        ce.episode = e;
        ce.t = t;
        mem1.push(std::move(ce));

        // Rank-voting value of every stored tuple against the current memory.
        // Ranks are taken on the raw objective columns: rank voting is invariant
        // under any strictly increasing per-objective transform, and the raw
        // values (unlike rewards normalized against a still-moving window) give
        // every stored tuple the same footing.
        const int n = mem1.size();
        std::array<std::vector<double>, 3> cols;
        for (int j = 0; j < 3; ++j) {
          cols[j].resize(n);
          for (int i = 0; i < n; ++i) cols[j][i] = mem1[i].objectives[j];
        }
        std::array<std::vector<int>, 3> ranks;
        for (int j = 0; j < 3; ++j) ranks[j] = asc_ranks_all(cols[j]);
        const double central_r =
            (ranks[0][n - 1] + ranks[1][n - 1] + ranks[2][n - 1]) / (3.0 * n);

        for (int s = 0; s < kNumClasses; ++s) {
          if (memd[s].size() < cfg.dist_minibatch) continue;
          const std::vector<int> idx =
              memd[s].sample_indices(cfg.dist_minibatch, rng.sampling);
          std::vector<const Transition*> batch;
          batch.reserve(idx.size());
          for (int i : idx) batch.push_back(&memd[s][i]);
          update_critic(art.agents[1 + s], batch);
          update_actor(art.agents[1 + s], batch);
          soft_update_agent(art.agents[1 + s]);
        }
        if (n >= cfg.central_minibatch) {
          const std::vector<int> idx =
              mem1.sample_indices(cfg.central_minibatch, rng.sampling);
          std::vector<Transition> batch_store;
          batch_store.reserve(idx.size());
          for (int i : idx) {
            Transition tr;
            tr.obs = mem1[i].obs;
            tr.act = mem1[i].act;
            tr.reward =
                (ranks[0][i] + ranks[1][i] + ranks[2][i]) / (3.0 * n);
            tr.next_obs = mem1[i].next_obs;
            batch_store.push_back(std::move(tr));
          }
          std::vector<const Transition*> batch;
          batch.reserve(batch_store.size());
          for (const Transition& tr : batch_store) batch.push_back(&tr);
          update_critic(central, batch);
          update_actor(central, batch);
          soft_update_agent(central);
        }

        MetricsRow row;
        row.episode = e;
        row.t = t;
        row.r1sum_bps = step.metrics.r1sum_bps;
        row.d2ave_s = step.metrics.d2ave_s;
        row.sinr3ave = step.metrics.sinr3ave;
        row.reward1 = r[0];
        row.reward2 = r[1];
        row.reward3 = r[2];
        row.central_reward = central_r;
        row.repairs = step.repairs;
        art.trace.push_back(row);
        if (opts.on_row) opts.on_row(row);
        ++step_idx;
      } catch (const std::exception& ex) {
        throw numerical_error("run_training failed at episode " +
                              std::to_string(e) + ", t " + std::to_string(t) +
                              ": " + ex.what());
      }
    }
    if (e >= cfg.episodes - 3) collect_pareto(mem1, art.pareto, pareto_seen);
  }
  finalize_trace_rewards(art, cfg);
  return art;
}

// --- MADDPG benchmark ---------------------------------------------------------------

namespace {

std::vector<double> build_maddpg_observation(const TopologyState& st,
                                             const ScenarioConfig& cfg, int s) {
  std::vector<double> o = build_distributed_observation(st, cfg, s);
  o.reserve(3 * cfg.users_per_class[s]);
  for (const Vec2& u : st.user_xy[s]) {
    o.push_back(u.x / cfg.area_side_m);
    o.push_back(u.y / cfg.area_side_m);
  }
  return o;
}

struct JointExperience {
  std::array<std::vector<double>, 3> obs, acts, next_obs;
  std::array<double, 3> rewards{};
};

// Critic input for agent s: own observation, own action, then the other two
// agents' actions in cyclic class order.
std::vector<double> joint_critic_input(int s, const std::vector<double>& obs,
                                       const std::array<std::vector<double>, 3>& acts) {
  std::vector<double> in = obs;
  for (int off = 0; off < 3; ++off) {
    const auto& a = acts[(s + off) % 3];
    in.insert(in.end(), a.begin(), a.end());
  }
  return in;
}

void maddpg_train_agent(std::array<DdpgAgent, 3>& agents, int s,
                        const std::vector<const JointExperience*>& batch) {
  DdpgAgent& ag = agents[s];
  const double inv_b = 1.0 / (double)batch.size();
  // Critic: TD regression toward r + gamma * Q'(o', mu'_all(o')).
  Gradients ctotal = zero_gradients(ag.critic);
  for (const JointExperience* je : batch) {
    std::array<std::vector<double>, 3> next_acts;
    for (int i = 0; i < 3; ++i)
      next_acts[i] = forward(agents[i].actor_target, je->next_obs[i]).output();
    const double q2 =
        forward(ag.critic_target, joint_critic_input(s, je->next_obs[s], next_acts))
            .output()[0];
    const double y = je->rewards[s] + ag.gamma * q2;
    const ForwardCache cache =
        forward(ag.critic, joint_critic_input(s, je->obs[s], je->acts));
    const double q = cache.output()[0];
    accumulate(ctotal, backward(ag.critic, cache, {2.0 * (q - y) * inv_b}), 1.0);
  }
  sgd_step(ag.critic, ctotal, Direction::Descend);
  // Actor: ascend mean Q with the other agents' actions held fixed.
  const int obs_len = ag.obs_len();
  const int act_len = ag.act_len();
  Gradients atotal = zero_gradients(ag.actor);
  for (const JointExperience* je : batch) {
    const ForwardCache acache = forward(ag.actor, je->obs[s]);
    std::array<std::vector<double>, 3> acts = je->acts;
    acts[s] = acache.output();
    const ForwardCache ccache =
        forward(ag.critic, joint_critic_input(s, je->obs[s], acts));
    const Gradients cg = backward(ag.critic, ccache, {1.0});
    std::vector<double> dq_da(cg.dx.begin() + obs_len,
                              cg.dx.begin() + obs_len + act_len);
    for (auto& x : dq_da) x *= inv_b;
    accumulate(atotal, backward(ag.actor, acache, dq_da), 1.0);
  }
  sgd_step(ag.actor, atotal, Direction::Ascend);
  soft_update_agent(ag);
}

}  // namespace

TrainingArtifacts run_maddpg_baseline(const ScenarioConfig& cfg,
                                      const TrainOptions& opts) {
  validate_config(cfg);
  RngStreams rng(cfg.seed);
  const int central_len = 12 + 2 * cfg.num_vuav;
  int total_act = 0;
  for (int s = 0; s < kNumClasses; ++s)
    total_act += 3 * cfg.users_per_class[s] + central_len;

  TrainingArtifacts art;
  std::array<DdpgAgent, 3> agents;
  for (int s = 0; s < kNumClasses; ++s) {
    const int obs_len = 3 * cfg.users_per_class[s];
    const int act_len = 3 * cfg.users_per_class[s] + central_len;
    DdpgAgent a;
    a.actor = init_mlp(with_hidden(obs_len, act_len, cfg), cfg.actor_lr, rng.init);
    a.critic =
        init_mlp(with_hidden(obs_len + total_act, 1, cfg), cfg.critic_lr, rng.init);
    a.actor_target = a.actor;
    a.critic_target = a.critic;
    a.gamma = cfg.gamma;
    a.tau = cfg.tau;
    a.ou_state.assign(act_len, 0.0);
    diversify_policy_outputs(a, 0, 3 * cfg.users_per_class[s], rng.init);
    seed_vuav_placement_prior(a, 3 * cfg.users_per_class[s] + 12, cfg);
    agents[s] = std::move(a);
  }

  ReplayBuffer<JointExperience> mem(cfg.dist_buffer_capacity);
  const std::vector<Vec2> pinned = fixed_positions(opts, cfg);
  const long long total_steps = (long long)cfg.episodes * cfg.timesteps;
  long long step_idx = 0;

  for (int e = 0; e < cfg.episodes; ++e) {
    TopologyState st = init_topology(cfg, rng.topology, rng.arrivals);
    for (int t = 0; t < cfg.timesteps; ++t) {
      try {
        const double sigma = opts.explore ? sigma_at(cfg, step_idx, total_steps) : 0.0;
        std::array<std::vector<double>, 3> obs, acts, raws;
        for (int s = 0; s < kNumClasses; ++s)
          obs[s] = build_maddpg_observation(st, cfg, s);
        std::vector<double> central_raw(central_len, 0.0);
        for (int s = 0; s < kNumClasses; ++s) {
          acts[s] = select_action(agents[s], obs[s], sigma, cfg.noise_kind, rng.noise);
          const int own = 3 * cfg.users_per_class[s];
          raws[s].assign(acts[s].begin(), acts[s].begin() + own);
          for (int i = 0; i < central_len; ++i)
            central_raw[i] += acts[s][own + i] / kNumClasses;
        }
        CentralCommand cmd = decode_central_action(central_raw, cfg);
        if (!opts.learn_vuav) cmd.vuav_xy = pinned;

        EnvStep step = env_evaluate(st, cmd, raws, cfg, rng.fading, opts.dual_repair);
        art.normalizer.update(compressed_metrics(step.metrics));
        std::array<double, 3> r;
        for (int s = 0; s < kNumClasses; ++s)
          r[s] = distributed_reward(step.metrics, s, art.normalizer);

        env_advance(st, cfg, rng.topology, rng.arrivals);

        JointExperience je;
        je.obs = obs;
        je.acts = acts;
        je.rewards = r;
        for (int s = 0; s < kNumClasses; ++s)
          je.next_obs[s] = build_maddpg_observation(st, cfg, s);
        mem.push(std::move(je));

        if (mem.size() >= cfg.dist_minibatch) {
          for (int s = 0; s < kNumClasses; ++s) {
            const std::vector<int> idx =
                mem.sample_indices(cfg.dist_minibatch, rng.sampling);
            std::vector<const JointExperience*> batch;
            batch.reserve(idx.size());
            for (int i : idx) batch.push_back(&mem[i]);
            maddpg_train_agent(agents, s, batch);
          }
        }

        MetricsRow row;
        row.episode = e;
        row.t = t;
        row.r1sum_bps = step.metrics.r1sum_bps;
        row.d2ave_s = step.metrics.d2ave_s;
        row.sinr3ave = step.metrics.sinr3ave;
        row.reward1 = r[0];
        row.reward2 = r[1];
        row.reward3 = r[2];
        row.central_reward = 0.0;  // no central agent in this benchmark
        row.repairs = step.repairs;
        art.trace.push_back(row);
        if (opts.on_row) opts.on_row(row);
        ++step_idx;
      } catch (const std::exception& ex) {
        throw numerical_error("run_maddpg_baseline failed at episode " +
                              std::to_string(e) + ", t " + std::to_string(t) +
                              ": " + ex.what());
      }
    }
  }
  for (auto& a : agents) art.agents.push_back(std::move(a));
  finalize_trace_rewards(art, cfg);
  return art;
}

// --- scalar utility benchmark ----------------------------------------------------------

TrainingArtifacts run_scalar_utility_baseline(const ScenarioConfig& cfg,
                                              const UtilityWeights& w,
                                              const TrainOptions& opts) {
  validate_config(cfg);
  if (w.w1 < 0 || w.w2 < 0 || w.w3 < 0 || w.w1 + w.w2 + w.w3 <= 0)
    throw std::invalid_argument("utility weights must be nonnegative, sum > 0");
  RngStreams rng(cfg.seed);
  const AgentLayout L = make_layout(cfg);
  const int central_len = L.central_act_len;
  int act_len = central_len;
  for (int s = 0; s < kNumClasses; ++s) act_len += L.dist_act_len[s];

  TrainingArtifacts art;
  art.agents.push_back(make_agent(with_hidden(L.central_obs_len, act_len, cfg),
                                  with_hidden(L.central_obs_len + act_len, 1, cfg),
                                  cfg.actor_lr, cfg.critic_lr, cfg.gamma, cfg.tau,
                                  rng.init));
  diversify_policy_outputs(art.agents[0], central_len, act_len, rng.init);
  seed_vuav_placement_prior(art.agents[0], 12, cfg);
  DdpgAgent& agent = art.agents[0];
  ReplayBuffer<Transition> mem(cfg.central_buffer_capacity);
  const std::vector<Vec2> pinned = fixed_positions(opts, cfg);
  const long long total_steps = (long long)cfg.episodes * cfg.timesteps;
  long long step_idx = 0;

  for (int e = 0; e < cfg.episodes; ++e) {
    TopologyState st = init_topology(cfg, rng.topology, rng.arrivals);
    for (int t = 0; t < cfg.timesteps; ++t) {
      try {
        const double sigma = opts.explore ? sigma_at(cfg, step_idx, total_steps) : 0.0;
        const std::vector<double> obs = build_central_observation(st, cfg);
        const std::vector<double> act =
            select_action(agent, obs, sigma, cfg.noise_kind, rng.noise);
        CentralCommand cmd = decode_central_action(
            std::vector<double>(act.begin(), act.begin() + central_len), cfg);
        if (!opts.learn_vuav) cmd.vuav_xy = pinned;
        std::array<std::vector<double>, 3> raws;
        int off = central_len;
        for (int s = 0; s < kNumClasses; ++s) {
          raws[s].assign(act.begin() + off, act.begin() + off + L.dist_act_len[s]);
          off += L.dist_act_len[s];
        }

        EnvStep step = env_evaluate(st, cmd, raws, cfg, rng.fading, opts.dual_repair);
        art.normalizer.update(compressed_metrics(step.metrics));
        const double n1 = distributed_reward(step.metrics, 0, art.normalizer);
        const double n2 = 1.0 - distributed_reward(step.metrics, 1, art.normalizer);
        const double n3 = distributed_reward(step.metrics, 2, art.normalizer);
        const double utility = w.w1 * n1 - w.w2 * n2 + w.w3 * n3;
        const double reward = (utility + w.w2) / (w.w1 + w.w2 + w.w3);

        env_advance(st, cfg, rng.topology, rng.arrivals);

        Transition tr;
        tr.obs = obs;
        tr.act = act;
        tr.reward = reward;
        tr.next_obs = build_central_observation(st, cfg);
        mem.push(std::move(tr));

        if (mem.size() >= cfg.central_minibatch) {
          const std::vector<int> idx =
              mem.sample_indices(cfg.central_minibatch, rng.sampling);
          std::vector<const Transition*> batch;
          batch.reserve(idx.size());
          for (int i : idx) batch.push_back(&mem[i]);
          update_critic(agent, batch);
          update_actor(agent, batch);
          soft_update_agent(agent);
        }

        MetricsRow row;
        row.episode = e;
        row.t = t;
        row.r1sum_bps = step.metrics.r1sum_bps;
        row.d2ave_s = step.metrics.d2ave_s;
        row.sinr3ave = step.metrics.sinr3ave;
        row.reward1 = n1;
        row.reward2 = 1.0 - n2;
        row.reward3 = n3;
        row.central_reward = utility;
        row.repairs = step.repairs;
        art.trace.push_back(row);
        if (opts.on_row) opts.on_row(row);
        ++step_idx;
      } catch (const std::exception& ex) {
        throw numerical_error("run_scalar_utility_baseline failed at episode " +
                              std::to_string(e) + ", t " + std::to_string(t) +
                              ": " + ex.what());
      }
    }
  }
  finalize_trace_rewards(art, cfg);
  // U stays exactly recomputable from the re-expressed reward columns.
  for (MetricsRow& row : art.trace)
    row.central_reward =
        w.w1 * row.reward1 - w.w2 * (1.0 - row.reward2) + w.w3 * row.reward3;
  return art;
}

}  // namespace sagin

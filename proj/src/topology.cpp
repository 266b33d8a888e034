// topology.cpp - two-zone user placement, i.i.d. mobility, arrival sampling.
#include "sagin/topology.hpp"

namespace sagin {

Vec2 draw_user_position(const ScenarioConfig& cfg, Rng& rng) {
  // Dense square [0, side/2]^2 has area share 1/4; with density ratio q the
  // probability mass there is q*(1/4) / (q*(1/4) + 3/4).
  const double q = cfg.density_ratio;
  const double p_dense = q * 0.25 / (q * 0.25 + 0.75);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double half = cfg.area_side_m * 0.5;
  if (u01(rng) < p_dense) {
    double x = u01(rng) * half;
    double y = u01(rng) * half;
    return {x, y};
  }
  // Uniform over the L-shaped remainder via rejection from the full square.
  for (;;) {
    double x = u01(rng) * cfg.area_side_m;
    double y = u01(rng) * cfg.area_side_m;
    if (!(x < half && y < half)) return {x, y};
  }
}

void step_user_positions(TopologyState& state, const ScenarioConfig& cfg, Rng& rng) {
  for (int s = 0; s < kNumClasses; ++s)
    for (auto& pos : state.user_xy[s]) pos = draw_user_position(cfg, rng);
}

void sample_arrivals(TopologyState& state, const ScenarioConfig& cfg, Rng& rng) {
  const double mean_bits = cfg.per_user_arrival_bps() * cfg.slot_s;
  for (int s = 0; s < kNumClasses; ++s) {
    auto& a = state.arrivals_bits[s];
    a.resize(cfg.users_per_class[s]);
    if (s == 1) {
      // Poisson count of fixed-size packets, matching the mean bit rate.
      if (mean_bits <= 0.0) {
        std::fill(a.begin(), a.end(), 0.0);
        continue;
      }
      std::poisson_distribution<int> pkts(mean_bits / cfg.packet_bits);
      for (auto& v : a) v = cfg.packet_bits * pkts(rng);
    } else {
      // Full-buffer classes: constant backlog worth one slot of traffic.
      std::fill(a.begin(), a.end(), mean_bits);
    }
  }
}

TopologyState init_topology(const ScenarioConfig& cfg, Rng& topo_rng, Rng& arrival_rng) {
  TopologyState st;
  for (int s = 0; s < kNumClasses; ++s) {
    st.user_xy[s].resize(cfg.users_per_class[s]);
    for (auto& pos : st.user_xy[s]) pos = draw_user_position(cfg, topo_rng);
  }
  st.vuav_xyz.resize(cfg.num_vuav);
  for (int v = 0; v < cfg.num_vuav; ++v)
    st.vuav_xyz[v] = {cfg.vuav_start_xy[v].x, cfg.vuav_start_xy[v].y,
                      cfg.vuav_altitude_m};
  st.vleo_xyz = {cfg.area_side_m * 0.5, cfg.area_side_m * 0.5, cfg.vleo_altitude_m};
  sample_arrivals(st, cfg, arrival_rng);
  st.t = 0;
  return st;
}

UserDistances user_distances(const TopologyState& state, const ScenarioConfig& cfg,
                             int cls, int user) {
  UserDistances d;
  const Vec2 u = state.user_xy[cls][user];
  d.to_vbs.resize(cfg.num_vbs);
  for (int m = 0; m < cfg.num_vbs; ++m) d.to_vbs[m] = dist2(u, cfg.vbs_xy[m]);
  d.to_vuav.resize(cfg.num_vuav);
  Vec3 u3{u.x, u.y, 0.0};
  for (int v = 0; v < cfg.num_vuav; ++v) d.to_vuav[v] = dist3(u3, state.vuav_xyz[v]);
  d.to_vleo = cfg.vleo_altitude_m;  // orbit height dominates any ground offset
  return d;
}

}  // namespace sagin

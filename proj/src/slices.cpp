// slices.cpp - slice service metrics, constraint checking, objective vector.
#include "sagin/slices.hpp"

#include <cmath>

namespace sagin {

namespace {

constexpr double kBinTol = 1e-9;   // binariness / share-sum tolerance
constexpr double kBudgetTol = 1e-9;  // relative slack on budget sums

// Emitted power of each same-layer component on (class s, subchannel n),
// broadcast over users: p_eff(k, j, n) = sum_k' phi(k',j) xi(k',n) p(k',j,n).
Cube emitted_power(const AllocationDecision& d, int s, int c_lo, int c_hi) {
  const int K = d.xi[s].rows;
  const int N = d.N;
  const int span = c_hi - c_lo;
  Cube out(K, span, N);
  for (int j = 0; j < span; ++j)
    for (int n = 0; n < N; ++n) {
      double e = 0.0;
      for (int k = 0; k < K; ++k)
        e += d.phi[s](k, c_lo + j) * d.xi[s](k, n) * d.power[s](k, c_lo + j, n);
      for (int k = 0; k < K; ++k) out(k, j, n) = e;
    }
  return out;
}

}  // namespace

double interference_at(const AllocationDecision& d, const ChannelRealization& g,
                       const ScenarioConfig& cfg, int s, int k, int c, int n) {
  const CompType t = comp_type(c, cfg);
  if (t == CompType::Vleo) return 0.0;  // single satellite, no co-layer cell
  if (t == CompType::Vbs) {
    const Cube p_eff = emitted_power(d, s, 0, cfg.num_vbs);
    return interference_vbs(k, c, n, p_eff, g.g_vbs[s]);
  }
  const int base = cfg.num_vbs;
  const Cube p_eff = emitted_power(d, s, base, base + cfg.num_vuav);
  return interference_vuav(k, c - base, n, p_eff, g.g_vuav[s]);
}

double user_rate(const AllocationDecision& d, const ChannelRealization& g,
                 const ScenarioConfig& cfg, int s, int k) {
  double terrestrial = 0.0, aerial = 0.0, leo = 0.0;
  const int C = d.num_components();
  for (int c = 0; c < C; ++c) {
    if (d.phi[s](k, c) == 0.0) continue;
    for (int n = 0; n < d.N; ++n) {
      const double mask = d.phi[s](k, c) * d.xi[s](k, n);
      if (mask == 0.0) continue;
      const double p = d.power[s](k, c, n);
      const double I = interference_at(d, g, cfg, s, k, c, n);
      switch (comp_type(c, cfg)) {
        case CompType::Vbs:
          terrestrial += mask * subchannel_rate(p, g.g_vbs[s](k, c, n), I, cfg);
          break;
        case CompType::Vuav:
          aerial += mask * subchannel_rate(p, g.g_vuav[s](k, c - cfg.num_vbs, n), I, cfg);
          break;
        case CompType::Vleo:
          leo += mask * subchannel_rate(p, g.g_vleo[s](k, n), 0.0, cfg);
          break;
      }
    }
  }
  return terrestrial + aerial + std::min(leo, cfg.leo_rate_cap_bps);
}

double user_sinr(const AllocationDecision& d, const ChannelRealization& g,
                 const ScenarioConfig& cfg, int s, int k) {
  const double floor_w = cfg.subchannel_hz() * cfg.noise_psd_w_hz;
  double total = 0.0;
  const int C = d.num_components();
  for (int c = 0; c < C; ++c) {
    if (d.phi[s](k, c) == 0.0) continue;
    for (int n = 0; n < d.N; ++n) {
      const double mask = d.phi[s](k, c) * d.xi[s](k, n);
      if (mask == 0.0) continue;
      const double p = d.power[s](k, c, n);
      double gain = 0.0, I = 0.0;
      switch (comp_type(c, cfg)) {
        case CompType::Vbs:
          gain = g.g_vbs[s](k, c, n);
          I = interference_at(d, g, cfg, s, k, c, n);
          break;
        case CompType::Vuav:
          gain = g.g_vuav[s](k, c - cfg.num_vbs, n);
          I = interference_at(d, g, cfg, s, k, c, n);
          break;
        case CompType::Vleo:
          gain = g.g_vleo[s](k, n);
          break;
      }
      total += mask * (p * gain) / (I + floor_w);
    }
  }
  return total;
}

double serving_distance(const AllocationDecision& d, const TopologyState& st,
                        const ScenarioConfig& cfg, int s, int k) {
  const UserDistances dist = user_distances(st, cfg, s, k);
  double used_subch = 0.0;
  for (int n = 0; n < d.N; ++n) used_subch += d.xi[s](k, n);
  double out = 0.0;
  const int C = d.num_components();
  for (int c = 0; c < C; ++c) {
    if (d.phi[s](k, c) == 0.0) continue;
    double dc;
    switch (comp_type(c, cfg)) {
      case CompType::Vbs: dc = dist.to_vbs[c]; break;
      case CompType::Vuav: dc = dist.to_vuav[c - cfg.num_vbs]; break;
      default: dc = dist.to_vleo; break;
    }
    out += d.phi[s](k, c) * used_subch * dc;
  }
  return out;
}

double throughput_class1(const AllocationDecision& d, const ChannelRealization& g,
                         const ScenarioConfig& cfg) {
  double sum = 0.0;
  for (int k = 0; k < cfg.users_per_class[0]; ++k) sum += user_rate(d, g, cfg, 0, k);
  return sum;
}

double service_delay(double dist_m, double arrival_bits, double rate_bps,
                     double lambda_bps, const ScenarioConfig& cfg) {
  if (arrival_bits < 0.0)
    throw std::domain_error("service_delay: arrivals must be >= 0");
  if (rate_bps <= lambda_bps || rate_bps <= 0.0) return cfg.delay_penalty_s();
  const double prop = dist_m / kLightSpeed;
  const double tx = arrival_bits / rate_bps;
  const double queue = lambda_bps * arrival_bits /
                       (2.0 * (rate_bps * rate_bps - lambda_bps * rate_bps));
  return prop + tx + queue;
}

double average_delay_class2(const AllocationDecision& d, const ChannelRealization& g,
                            const TopologyState& st, const ScenarioConfig& cfg) {
  const int K2 = cfg.users_per_class[1];
  if (K2 < 1) return 0.0;
  const double lam = cfg.per_user_arrival_bps();
  double sum = 0.0;
  for (int k = 0; k < K2; ++k) {
    const double r = user_rate(d, g, cfg, 1, k);
    const double dist = serving_distance(d, st, cfg, 1, k);
    sum += service_delay(dist, st.arrivals_bits[1][k], r, lam, cfg);
  }
  return sum / K2;
}

double average_sinr_class3(const AllocationDecision& d, const ChannelRealization& g,
                           const ScenarioConfig& cfg) {
  const int K3 = cfg.users_per_class[2];
  if (K3 < 1) return 0.0;
  double sum = 0.0;
  for (int k = 0; k < K3; ++k) sum += user_sinr(d, g, cfg, 2, k);
  return sum / K3;
}

double power_consumption(const AllocationDecision& d, const ScenarioConfig& cfg,
                         int s, int c) {
  const int K = cfg.users_per_class[s];
  double sum = 0.0;
  for (int k = 0; k < K; ++k) {
    if (d.phi[s](k, c) == 0.0) continue;
    for (int n = 0; n < d.N; ++n)
      sum += d.phi[s](k, c) * d.xi[s](k, n) * d.power[s](k, c, n);
  }
  return sum;
}

ViolationReport check_constraints(const AllocationDecision& d,
                                  const ScenarioConfig& cfg) {
  ViolationReport rep;
  const int C = d.num_components();
  auto add = [&](const std::string& cid, std::array<int, 4> idx,
                 const std::string& detail) {
    rep.items.push_back({cid, idx, detail});
  };

  // C1: at most one user per (class, component, subchannel).
  for (int s = 0; s < kNumClasses; ++s)
    for (int c = 0; c < C; ++c)
      for (int n = 0; n < d.N; ++n) {
        double occ = 0.0;
        for (int k = 0; k < d.xi[s].rows; ++k)
          occ += d.xi[s](k, n) * d.phi[s](k, c);
        if (occ > 1.0 + kBinTol)
          add("C1", {s, c, n, -1}, "slot claimed " + fmt_g(occ) + " times");
      }

  // C2: each user occupies at most one (component, subchannel) pair.
  for (int s = 0; s < kNumClasses; ++s)
    for (int k = 0; k < d.xi[s].rows; ++k) {
      double pairs = 0.0;
      for (int c = 0; c < C; ++c)
        for (int n = 0; n < d.N; ++n) pairs += d.xi[s](k, n) * d.phi[s](k, c);
      if (pairs > 1.0 + kBinTol)
        add("C2", {s, k, -1, -1}, "user on " + fmt_g(pairs) + " pairs");
    }

  // C3: each user associates with at most one component.
  for (int s = 0; s < kNumClasses; ++s)
    for (int k = 0; k < d.phi[s].rows; ++k) {
      double comps = 0.0;
      for (int c = 0; c < C; ++c) comps += d.phi[s](k, c);
      if (comps > 1.0 + kBinTol)
        add("C3", {s, k, -1, -1}, "user on " + fmt_g(comps) + " components");
    }

  // C4: factor ranges, eta (factor index 0) then rho (factor index 1).
  for (int s = 0; s < kNumClasses; ++s)
    for (int ct = 0; ct < 3; ++ct) {
      if (d.eta[s][ct] <= 0.0 || d.eta[s][ct] >= 1.0)
        add("C4", {s, ct, 0, -1}, "eta = " + fmt_g(d.eta[s][ct]));
      if (d.rho[s][ct] <= 0.0 || d.rho[s][ct] >= 1.0)
        add("C4", {s, ct, 1, -1}, "rho = " + fmt_g(d.rho[s][ct]));
    }

  // C5: nonnegative power entries.
  for (int s = 0; s < kNumClasses; ++s)
    for (int k = 0; k < d.power[s].d0; ++k)
      for (int c = 0; c < C; ++c)
        for (int n = 0; n < d.N; ++n)
          if (d.power[s](k, c, n) < 0.0)
            add("C5", {s, k, c, n}, "p = " + fmt_g(d.power[s](k, c, n)));

  // C6: binariness of xi (array index 0) and phi (array index 1).
  auto nonbinary = [](double x) {
    return std::fabs(x) > kBinTol && std::fabs(x - 1.0) > kBinTol;
  };
  for (int s = 0; s < kNumClasses; ++s) {
    for (int k = 0; k < d.xi[s].rows; ++k)
      for (int n = 0; n < d.N; ++n)
        if (nonbinary(d.xi[s](k, n)))
          add("C6", {0, s, k, n}, "xi = " + fmt_g(d.xi[s](k, n)));
    for (int k = 0; k < d.phi[s].rows; ++k)
      for (int c = 0; c < C; ++c)
        if (nonbinary(d.phi[s](k, c)))
          add("C6", {1, s, k, c}, "phi = " + fmt_g(d.phi[s](k, c)));
  }

  // C7: per-(class, component) power budgets rho * P.
  for (int s = 0; s < kNumClasses; ++s)
    for (int c = 0; c < C; ++c) {
      const CompType t = comp_type(c, cfg);
      const double budget = d.rho[s][(int)t] * comp_power_budget(t, cfg);
      const double used = power_consumption(d, cfg, s, c);
      if (used > budget * (1.0 + kBudgetTol) + 1e-12)
        add("C7", {s, c, -1, -1},
            "used " + fmt_g(used) + " W of " + fmt_g(budget) + " W");
    }

  // C8: per-(class, component) subchannel assignment counts <= eta * N.
  for (int s = 0; s < kNumClasses; ++s)
    for (int c = 0; c < C; ++c) {
      const CompType t = comp_type(c, cfg);
      double count = 0.0;
      for (int k = 0; k < d.xi[s].rows; ++k) {
        if (d.phi[s](k, c) == 0.0) continue;
        for (int n = 0; n < d.N; ++n)
          count += d.xi[s](k, n) * d.phi[s](k, c);
      }
      const double cap = d.eta[s][(int)t] * cfg.num_subchannels;
      if (count > cap + kBinTol)
        add("C8", {s, c, -1, -1},
            "uses " + fmt_g(count) + " of " + fmt_g(cap) + " subchannels");
    }

  // C9: pairwise vUAV spacing.
  for (int i = 0; i < (int)d.vuav_xy.size(); ++i)
    for (int j = i + 1; j < (int)d.vuav_xy.size(); ++j) {
      const double dd = dist2(d.vuav_xy[i], d.vuav_xy[j]);
      if (dd < cfg.vuav_min_spacing_m - kBinTol)
        add("C9", {i, j, -1, -1}, "spacing " + fmt_g(dd) + " m");
    }

  // C10/C11: class sums of rho/eta equal one per component type.
  for (int ct = 0; ct < 3; ++ct) {
    double sr = 0.0, se = 0.0;
    for (int s = 0; s < kNumClasses; ++s) {
      sr += d.rho[s][ct];
      se += d.eta[s][ct];
    }
    if (std::fabs(sr - 1.0) > kBinTol)
      add("C10", {ct, -1, -1, -1}, "rho sum = " + fmt_g(sr));
    if (std::fabs(se - 1.0) > kBinTol)
      add("C11", {ct, -1, -1, -1}, "eta sum = " + fmt_g(se));
  }

  return rep;
}

SliceMetrics compute_metrics(const AllocationDecision& d, const ChannelRealization& g,
                             const TopologyState& st, const ScenarioConfig& cfg) {
  SliceMetrics m;
  m.r1sum_bps = throughput_class1(d, g, cfg);
  m.d2ave_s = average_delay_class2(d, g, st, cfg);
  m.sinr3ave = average_sinr_class3(d, g, cfg);
  m.delay_margin_s = cfg.delay_budget_s - m.d2ave_s;
  if (!std::isfinite(m.r1sum_bps) || !std::isfinite(m.d2ave_s) ||
      !std::isfinite(m.sinr3ave))
    throw numerical_error("compute_metrics: non-finite slice metric");
  return m;
}

}  // namespace sagin

// allocation.cpp - decision container and eta-driven subchannel pools.
#include "sagin/allocation.hpp"

#include <cmath>

namespace sagin {

AllocationDecision AllocationDecision::zeros(const ScenarioConfig& cfg) {
  AllocationDecision d;
  d.M = cfg.num_vbs;
  d.V = cfg.num_vuav;
  d.N = cfg.num_subchannels;
  const int C = d.num_components();
  for (int s = 0; s < kNumClasses; ++s) {
    const int K = cfg.users_per_class[s];
    d.xi[s] = Mat(K, d.N);
    d.phi[s] = Mat(K, C);
    d.power[s] = Cube(K, C, d.N);
    d.eta[s] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    d.rho[s] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  }
  d.vuav_xy.resize(cfg.num_vuav);
  for (int v = 0; v < cfg.num_vuav; ++v) d.vuav_xy[v] = cfg.vuav_start_xy[v];
  return d;
}

ResourcePools make_pools(const std::array<std::array<double, 3>, kNumClasses>& eta,
                         int num_subchannels, int num_vbs, int num_vuav) {
  const int N = num_subchannels;
  const int C = num_vbs + num_vuav + 1;
  ResourcePools pools;
  pools.N = N;
  for (int s = 0; s < kNumClasses; ++s) {
    pools.start[s].assign(C, 0);
    pools.width[s].assign(C, 0);
  }

  // Widths per component type: floor(eta * N), so the subchannel-usage bound
  // (at most eta_s * N subchannels per class and component) can never be
  // exceeded.
  std::array<std::array<int, 3>, kNumClasses> w{};
  for (int ct = 0; ct < 3; ++ct) {
    int used = 0;
    for (int s = 0; s < kNumClasses; ++s) {
      // a hair of slack so exact fractions like 2/7 * 7 survive flooring.
      const double target = std::max(eta[s][ct], 0.0) * N + 1e-9;
      w[s][ct] = std::clamp((int)std::floor(target), 0, N - used);
      used += w[s][ct];
    }
  }

  // Contiguous class blocks, cyclically shifted per co-layer instance
  // (fractional frequency reuse across same-type cells).
  for (int c = 0; c < C; ++c) {
    int ct, inst, count;
    if (c < num_vbs) {
      ct = 0; inst = c; count = num_vbs;
    } else if (c < num_vbs + num_vuav) {
      ct = 1; inst = c - num_vbs; count = num_vuav;
    } else {
      ct = 2; inst = 0; count = 1;
    }
    int next = (inst * (N / count)) % N;
    for (int s = 0; s < kNumClasses; ++s) {
      pools.start[s][c] = next;
      pools.width[s][c] = w[s][ct];
      next = (next + w[s][ct]) % N;
    }
  }
  return pools;
}

}  // namespace sagin

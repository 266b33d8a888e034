// allocation.hpp - one slot's full resource-allocation decision across the
// three slice classes and the component set {M vBSs, V vUAVs, 1 vLEO}.
#pragma once

#include <array>
#include <vector>

#include "sagin/config.hpp"
#include "sagin/util.hpp"

namespace sagin {

enum class CompType { Vbs = 0, Vuav = 1, Vleo = 2 };

// Component index space: [0, M) vBSs, [M, M+V) vUAVs, M+V the vLEO.
inline CompType comp_type(int c, const ScenarioConfig& cfg) {
  if (c < cfg.num_vbs) return CompType::Vbs;
  if (c < cfg.num_vbs + cfg.num_vuav) return CompType::Vuav;
  return CompType::Vleo;
}

inline double comp_power_budget(CompType t, const ScenarioConfig& cfg) {
  switch (t) {
    case CompType::Vbs: return cfg.vbs_power_w;
    case CompType::Vuav: return cfg.vuav_power_w;
    default: return cfg.vleo_power_w;
  }
}

struct AllocationDecision {
  int M = 0, V = 0, N = 0;
  // xi[s](k, n): subchannel indicator; phi[s](k, c): association indicator;
  // power[s](k, c, n): transmit power in watts.
  std::array<Mat, kNumClasses> xi;
  std::array<Mat, kNumClasses> phi;
  std::array<Cube, kNumClasses> power;
  // Inter-slice factors per class and component type.
  std::array<std::array<double, 3>, kNumClasses> eta{};  // subchannel shares
  std::array<std::array<double, 3>, kNumClasses> rho{};  // power shares
  std::vector<Vec2> vuav_xy;                             // commanded positions

  static AllocationDecision zeros(const ScenarioConfig& cfg);
  int num_components() const { return M + V + 1; }
};

// Per-class subchannel pools carved out of each component's N subchannels by
// the eta shares. Widths are floor(eta_s * N) so a class can never occupy
// more than its eta budget of the band; a starved class can end up with an
// empty pool on a layer. All instances of a component type share the same
// widths, but each co-layer instance shifts the whole layout by
// floor(N / instances) subchannels so that neighbouring cells reuse different
// frequencies and inter-cell interference stays low; pools may therefore wrap
// around the end of the band.
struct ResourcePools {
  // [class][component index] -> first subchannel and width.
  std::array<std::vector<int>, kNumClasses> start;
  std::array<std::vector<int>, kNumClasses> width;
  int N = 0;

  // j-th subchannel of class s's pool on component c.
  int slot(int s, int c, int j) const { return (start[s][c] + j) % N; }
  bool contains(int s, int c, int n) const {
    if (width[s][c] == 0) return false;
    return ((n - start[s][c]) % N + N) % N < width[s][c];
  }
};
ResourcePools make_pools(const std::array<std::array<double, 3>, kNumClasses>& eta,
                         int num_subchannels, int num_vbs, int num_vuav);

}  // namespace sagin

// topology.hpp - user/vUAV/vLEO geometry and per-slot traffic arrivals.
// Users are redrawn i.i.d. each time slot from a two-zone density (a dense
// square [0, side/2]^2 carrying density_ratio times the outside density).
#pragma once

#include <array>
#include <vector>

#include "sagin/config.hpp"
#include "sagin/rng.hpp"
#include "sagin/util.hpp"

namespace sagin {

struct TopologyState {
  std::array<std::vector<Vec2>, kNumClasses> user_xy;      // per class
  std::vector<Vec3> vuav_xyz;                              // V entries
  Vec3 vleo_xyz;                                           // centred, z = vleo_altitude
  std::array<std::vector<double>, kNumClasses> arrivals_bits;  // per class, per user
  int t = 0;
};

// Fresh state: users drawn from the two-zone model, vUAVs at their start
// coordinates, arrivals sampled for slot 0.
TopologyState init_topology(const ScenarioConfig& cfg, Rng& topo_rng, Rng& arrival_rng);

// Draw one user position from the two-zone density.
Vec2 draw_user_position(const ScenarioConfig& cfg, Rng& rng);

// Redraw every user position i.i.d. (mobility model between slots).
void step_user_positions(TopologyState& state, const ScenarioConfig& cfg, Rng& rng);

// Per-slot arrivals in bits. Classes 1 and 3 are full-buffer constants
// (per-user rate * slot). Class 2 is a Poisson number of fixed-size packets
// with the same per-user mean.
void sample_arrivals(TopologyState& state, const ScenarioConfig& cfg, Rng& rng);

// Distance from user k of class s to each component: 2-D to vBSs (both at
// ground level), 3-D to vUAVs, and the vLEO orbit height exactly (the
// footprint is tiny relative to the altitude).
struct UserDistances {
  std::vector<double> to_vbs;   // M
  std::vector<double> to_vuav;  // V
  double to_vleo = 0.0;
};
UserDistances user_distances(const TopologyState& state, const ScenarioConfig& cfg,
                             int cls, int user);

}  // namespace sagin

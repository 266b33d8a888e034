// orchestrator.hpp - the control plane: one central agent steering inter-slice
// shares and vUAV placement, three per-slice agents steering user association,
// subchannels and power; rank-voting central rewards; training loops for the
// proposed scheme and the two baselines.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "sagin/agent.hpp"
#include "sagin/allocation.hpp"
#include "sagin/analysis.hpp"
#include "sagin/channel.hpp"
#include "sagin/config.hpp"
#include "sagin/slices.hpp"
#include "sagin/topology.hpp"

namespace sagin {

// --- layouts -----------------------------------------------------------------

struct AgentLayout {
  int central_obs_len = 0;                   // 3 + 2 * total users
  int central_act_len = 0;                   // 12 + 2V
  std::array<int, kNumClasses> dist_obs_len{};  // K_s
  std::array<int, kNumClasses> dist_act_len{};  // 3 K_s
  std::vector<int> central_actor_dims, central_critic_dims;
  std::array<std::vector<int>, kNumClasses> dist_actor_dims, dist_critic_dims;
};

AgentLayout make_layout(const ScenarioConfig& cfg);

// Layer-dimension lists for the cost model.
std::vector<AgentLayoutDims> cdmaddpg_layout_dims(const ScenarioConfig& cfg);
std::vector<AgentLayoutDims> maddpg_layout_dims(const ScenarioConfig& cfg);

// --- observation / action codecs ----------------------------------------------

// [3 scaled per-class aggregate arrivals, then every user's (x, y) / side].
std::vector<double> build_central_observation(const TopologyState& st,
                                              const ScenarioConfig& cfg);

// K_s per-user arrivals scaled into [0,1].
std::vector<double> build_distributed_observation(const TopologyState& st,
                                                  const ScenarioConfig& cfg, int s);

struct CentralCommand {
  std::array<std::array<double, 3>, kNumClasses> eta{};  // [class][comp type]
  std::array<std::array<double, 3>, kNumClasses> rho{};
  std::vector<Vec2> vuav_xy;
};

// First 12 raws: (rho, eta) for classes 1-2 across the 3 component types via
// an invertible simplex transform (class 3 takes the remainder, all shares
// floored); last 2V raws: vUAV coordinates scaled to the area, spacing
// repaired by minimal displacement.
CentralCommand decode_central_action(const std::vector<double>& raw,
                                     const ScenarioConfig& cfg);

// Exact inverse of the share transform + coordinate scaling (for round-trip
// checks and tests). Requires all shares in (floor, 1).
std::vector<double> encode_central_command(const CentralCommand& cmd,
                                           const ScenarioConfig& cfg);

// Push vUAVs apart until pairwise spacing >= d_min (bounded iterations;
// falls back to the configured start coordinates if unresolved).
void repair_vuav_spacing(std::vector<Vec2>& xy, const ScenarioConfig& cfg);

// Per user (u1, u2, u3): component bucket, subchannel within the class's
// eta-pool on that component, power share of the remaining rho budget.
// Writes the class-s slice of the decision.
void decode_distributed_action(const std::vector<double>& raw, int s,
                               const CentralCommand& cmd, const ScenarioConfig& cfg,
                               AllocationDecision& d);

// Builds the full decision from the central command and the three raw
// distributed actions.
AllocationDecision assemble_decision(const CentralCommand& cmd,
                                     const std::array<std::vector<double>, 3>& raws,
                                     const ScenarioConfig& cfg);

// --- dual resource allocation ---------------------------------------------------

struct RepairOutcome {
  AllocationDecision decision;
  int moved = 0;   // users reassigned to an idle resource
  int zeroed = 0;  // users that lost their allocation
  int total() const { return moved + zeroed; }
};

// Conflict detection plus a second allocation round: conflicting users move to
// idle subchannels on the same component, then to other components with pool
// and budget headroom; when nothing is idle the first user in (class, index)
// order keeps the slot and the rest are zeroed with their power entry floored
// to 1% of the budget share. `reassign = false` downgrades to zero-only
// resolution (the single-allocation ablation). Output satisfies C1-C11.
RepairOutcome dual_resource_allocation(const AllocationDecision& d,
                                       const ScenarioConfig& cfg,
                                       bool reassign = true);

// --- rewards ----------------------------------------------------------------------

// Monotone compression applied to every metric before min/max normalization.
// Linear-domain throughput and especially SINR are heavy-tailed (a lone
// near-transmitter user can spike SINR by orders of magnitude); normalizing the
// raw values would let one spike pin the window and crush every later reward
// toward 0. log1p keeps ordering while bounding the spike's leverage.
double compress_metric(double v);

// Running 0-1 normalization over the experiment so far (compressed domain).
struct MinMaxNormalizer {
  std::array<double, 3> lo{}, hi{};
  bool seen = false;

  void update(const std::array<double, 3>& metrics);
  // (v - lo) / (hi - lo) clamped to [0,1]; 0.5 while the range is empty.
  double norm(int metric, double v) const;
  std::string to_text() const;
  static MinMaxNormalizer from_text(const std::string& text);
};

// r_{d-1} = norm(R1sum); r_{d-2} = 1 - norm(D2ave); r_{d-3} = norm(SINR3ave),
// each via compress_metric. During training the window is the experiment so
// far; the logged trace is re-expressed against the final window afterwards so
// one transform covers every row.
double distributed_reward(const SliceMetrics& m, int s, const MinMaxNormalizer& nz);

// Rank-voting value of window[current]: sum over the three per-slice reward
// columns of the 1-based ascending rank (ties earlier-insertion-first).
double central_reward(const std::vector<std::array<double, 3>>& window, int current);

// --- training ---------------------------------------------------------------------

struct ParetoCandidate {
  std::array<double, 3> rewards{};     // per-slice rewards in [0,1]
  std::array<double, 3> objectives{};  // (R1sum, beta - D2ave, SINR3ave)
  std::vector<double> central_action;
  std::array<std::vector<double>, 3> dist_actions;
  int episode = 0, t = 0;
};

struct TrainingArtifacts {
  std::vector<MetricsRow> trace;          // one row per TS
  std::vector<ParetoCandidate> pareto;    // collected over the last 3 episodes
  MinMaxNormalizer normalizer;
  std::vector<DdpgAgent> agents;          // central first, then per-class
};

struct TrainOptions {
  bool dual_repair = true;   // false: single-allocation ablation
  bool learn_vuav = true;    // false: pin vUAVs to fixed_vuav_xy
  std::vector<Vec2> fixed_vuav_xy;  // defaults to the configured start coords
  bool explore = true;
  std::function<void(const MetricsRow&)> on_row;  // streaming hook
};

// The full scheme: E episodes x T slots of central + per-slice decisions,
// repair, metrics, per-slice rewards, rank-voting central reward, DDPG
// updates with soft target tracking; aborts with episode/slot coordinates on
// numerical failure. Feasibility is asserted every slot.
TrainingArtifacts run_training(const ScenarioConfig& cfg, const TrainOptions& opts = {});

// Benchmark: three agents, each observing its own class (arrivals + user
// coordinates), each action carrying the intra-slice triples plus a copy of
// the central block (reconciled by element-wise mean); critics consume the
// agent's observation and all agents' actions.
TrainingArtifacts run_maddpg_baseline(const ScenarioConfig& cfg,
                                      const TrainOptions& opts = {});

struct UtilityWeights {
  double w1 = 1.0, w2 = 1.0, w3 = 1.0;
};

// Benchmark: one DDPG agent over the concatenated action space optimizing
// U = w1*norm(R1) - w2*norm(D2) + w3*norm(SINR3) (normalized metrics).
TrainingArtifacts run_scalar_utility_baseline(const ScenarioConfig& cfg,
                                              const UtilityWeights& w,
                                              const TrainOptions& opts = {});

}  // namespace sagin

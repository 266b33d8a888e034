// slices.hpp - per-slice service metrics (throughput, M/D/1 delay, SINR),
// power accounting, the constraint checker and the objective vector.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sagin/allocation.hpp"
#include "sagin/channel.hpp"
#include "sagin/config.hpp"
#include "sagin/topology.hpp"

namespace sagin {

// Interference seen by user k of class s if served by component c on
// subchannel n: other same-layer cells' emitted power on (s, n) weighted by
// this user's gain to them. The satellite has no co-layer interferer.
double interference_at(const AllocationDecision& d, const ChannelRealization& g,
                       const ScenarioConfig& cfg, int s, int k, int c, int n);

// Served rate of user k in class s: sum of assigned subchannel rates across
// layers; the vLEO share of the sum is clamped to leo_rate_cap_bps.
double user_rate(const AllocationDecision& d, const ChannelRealization& g,
                 const ScenarioConfig& cfg, int s, int k);

// SINR (linear) summed over the user's assigned subchannels.
double user_sinr(const AllocationDecision& d, const ChannelRealization& g,
                 const ScenarioConfig& cfg, int s, int k);

// Distance to the serving component (phi/xi weighted), 0 if unserved.
double serving_distance(const AllocationDecision& d, const TopologyState& st,
                        const ScenarioConfig& cfg, int s, int k);

// Sum rate of slice 1.
double throughput_class1(const AllocationDecision& d, const ChannelRealization& g,
                         const ScenarioConfig& cfg);

// M/D/1 service delay: propagation + transmission + queueing. An unstable or
// unserved queue (rate <= per-user arrival rate) costs the penalty delay.
double service_delay(double dist_m, double arrival_bits, double rate_bps,
                     double lambda_bps, const ScenarioConfig& cfg);

// Mean class-2 delay across users (propagating instability penalties).
double average_delay_class2(const AllocationDecision& d, const ChannelRealization& g,
                            const TopologyState& st, const ScenarioConfig& cfg);

// Mean class-3 per-user SINR sum.
double average_sinr_class3(const AllocationDecision& d, const ChannelRealization& g,
                           const ScenarioConfig& cfg);

// Power drawn by component c for class s (indicator-masked sum).
double power_consumption(const AllocationDecision& d, const ScenarioConfig& cfg,
                         int s, int c);

// --- constraints -----------------------------------------------------------

struct Violation {
  std::string constraint;        // "C1".."C11"
  std::array<int, 4> index;      // meaning depends on the constraint; -1 unused
  std::string detail;
};

struct ViolationReport {
  std::vector<Violation> items;
  bool clean() const { return items.empty(); }
};

// Checks, in order: C1 per-(class, component, subchannel) uniqueness, C2/C3
// per-user single subchannel/component, C4 factor ranges, C5 nonnegative
// power, C6 binariness, C7 power budgets, C8 subchannel budgets, C9 vUAV
// spacing, C10/C11 class share sums (equality within 1e-9).
ViolationReport check_constraints(const AllocationDecision& d,
                                  const ScenarioConfig& cfg);

// --- objective -------------------------------------------------------------

struct SliceMetrics {
  double r1sum_bps = 0.0;
  double d2ave_s = 0.0;
  double sinr3ave = 0.0;
  double delay_margin_s = 0.0;  // beta - d2ave
  std::array<double, 3> objective() const { return {r1sum_bps, delay_margin_s, sinr3ave}; }
};

SliceMetrics compute_metrics(const AllocationDecision& d, const ChannelRealization& g,
                             const TopologyState& st, const ScenarioConfig& cfg);

}  // namespace sagin

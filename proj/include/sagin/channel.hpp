// channel.hpp - per-layer channel gains and the shared subchannel rate kernel.
// Terrestrial links fade Rayleigh (exponential power), aerial links Rician
// with a unit LoS phasor, and the satellite link is deterministic free space.
#pragma once

#include <array>
#include <vector>

#include "sagin/config.hpp"
#include "sagin/rng.hpp"
#include "sagin/topology.hpp"
#include "sagin/util.hpp"

namespace sagin {

// Deterministic kernels (fading injected) ----------------------------------

// g = h * d^-alpha, h is the small-scale power gain.
double terrestrial_gain_from(double h, double d, double alpha);

// g = h0 * d^-alpha * | R/(R+1) * 1 + 1/(R+1) * (re + i*im) |,
// (re, im) the scattered complex sample.
double vuav_gain_from(double re, double im, double d, double h0, double alpha,
                      double rician_r);

// g = (c / (4*pi*fc))^2 * d^-alpha, no fading.
double vleo_gain(double d, double fc, double alpha);

// Sampling wrappers ---------------------------------------------------------

double sample_terrestrial_gain(double d, double alpha, Rng& rng);   // h ~ Exp(1)
double sample_vuav_gain(double d, const ScenarioConfig& cfg, Rng& rng);  // CN(0,1) scatter

// Rate kernel ---------------------------------------------------------------

// r = (B/N) * log2(1 + p*g / (I + (B/N)*N0)); zero power or gain gives zero.
double subchannel_rate(double p, double g, double interference,
                       const ScenarioConfig& cfg);

// Inter-cell interference seen by user k served by cell m on subchannel n:
// sum over the other same-layer cells j != m of p(k,j,n) * g(k,j,n), where p
// and g are (K, cells, N) arrays for one slice class. Works for the vBS and
// the vUAV layer alike; the satellite layer has no co-layer cell.
double interference_vbs(int k, int m, int n, const Cube& p, const Cube& g);
double interference_vuav(int k, int v, int n, const Cube& p, const Cube& g);

// Full realization ----------------------------------------------------------

struct ChannelRealization {
  // gains indexed [class][user][component][subchannel] per layer
  std::array<Cube, kNumClasses> g_vbs;   // (K_s, M, N)
  std::array<Cube, kNumClasses> g_vuav;  // (K_s, V, N)
  std::array<Mat, kNumClasses> g_vleo;   // (K_s, N)
  int t = 0;
};

// Draw all link gains for the current geometry. Fading consumption order is
// fixed (class, user, component, subchannel) so runs are reproducible.
ChannelRealization sample_realization(const TopologyState& state,
                                      const ScenarioConfig& cfg, Rng& fading_rng);

}  // namespace sagin

// channel.cpp - gain kernels, fading draws, and the shared rate formula.
#include "sagin/channel.hpp"

#include <cmath>

namespace sagin {

double terrestrial_gain_from(double h, double d, double alpha) {
  if (d <= 0.0) throw std::domain_error("terrestrial_gain: distance must be > 0");
  if (h < 0.0) throw std::domain_error("terrestrial_gain: fading power must be >= 0");
  return h * std::pow(d, -alpha);
}

double vuav_gain_from(double re, double im, double d, double h0, double alpha,
                      double rician_r) {
  if (d <= 0.0) throw std::domain_error("vuav_gain: distance must be > 0");
  const double los = rician_r / (rician_r + 1.0);
  const double nlos = 1.0 / (rician_r + 1.0);
  const double cr = los + nlos * re;  // LoS phasor fixed at 1+0i
  const double ci = nlos * im;
  return h0 * std::pow(d, -alpha) * std::sqrt(cr * cr + ci * ci);
}

double vleo_gain(double d, double fc, double alpha) {
  if (d <= 0.0) throw std::domain_error("vleo_gain: distance must be > 0");
  const double fs = kLightSpeed / (4.0 * M_PI * fc);
  return fs * fs * std::pow(d, -alpha);
}

double sample_terrestrial_gain(double d, double alpha, Rng& rng) {
  std::exponential_distribution<double> h(1.0);  // unit-mean power gain
  return terrestrial_gain_from(h(rng), d, alpha);
}

double sample_vuav_gain(double d, const ScenarioConfig& cfg, Rng& rng) {
  // CN(0,1): each component N(0, 1/2).
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return vuav_gain_from(re, im, d, cfg.ref_gain, cfg.path_loss_exp,
                        cfg.rician_factor);
}

double subchannel_rate(double p, double g, double interference,
                       const ScenarioConfig& cfg) {
  if (p < 0.0) throw std::domain_error("subchannel_rate: power must be >= 0");
  if (g < 0.0) throw std::domain_error("subchannel_rate: gain must be >= 0");
  if (interference < 0.0)
    throw std::domain_error("subchannel_rate: interference must be >= 0");
  if (p == 0.0 || g == 0.0) return 0.0;
  const double w = cfg.subchannel_hz();
  const double sinr = p * g / (interference + w * cfg.noise_psd_w_hz);
  return w * std::log2(1.0 + sinr);
}

double interference_vbs(int k, int m, int n, const Cube& p, const Cube& g) {
  double sum = 0.0;
  for (int j = 0; j < p.d1; ++j)
    if (j != m) sum += p(k, j, n) * g(k, j, n);
  return sum;
}

double interference_vuav(int k, int v, int n, const Cube& p, const Cube& g) {
  return interference_vbs(k, v, n, p, g);  // identical arithmetic per layer
}

ChannelRealization sample_realization(const TopologyState& state,
                                      const ScenarioConfig& cfg, Rng& fading_rng) {
  ChannelRealization cr;
  cr.t = state.t;
  const int N = cfg.num_subchannels;
  for (int s = 0; s < kNumClasses; ++s) {
    const int K = (int)state.user_xy[s].size();
    cr.g_vbs[s] = Cube(K, cfg.num_vbs, N);
    cr.g_vuav[s] = Cube(K, cfg.num_vuav, N);
    cr.g_vleo[s] = Mat(K, N);
    for (int k = 0; k < K; ++k) {
      const UserDistances d = user_distances(state, cfg, s, k);
      for (int m = 0; m < cfg.num_vbs; ++m)
        for (int n = 0; n < N; ++n)
          cr.g_vbs[s](k, m, n) =
              sample_terrestrial_gain(d.to_vbs[m], cfg.path_loss_exp, fading_rng);
      for (int v = 0; v < cfg.num_vuav; ++v)
        for (int n = 0; n < N; ++n)
          cr.g_vuav[s](k, v, n) = sample_vuav_gain(d.to_vuav[v], cfg, fading_rng);
      const double gl = vleo_gain(d.to_vleo, cfg.carrier_hz, cfg.path_loss_exp);
      for (int n = 0; n < N; ++n) cr.g_vleo[s](k, n) = gl;
    }
  }
  return cr;
}

}  // namespace sagin

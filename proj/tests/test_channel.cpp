#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sagin/channel.hpp"
#include "sagin/topology.hpp"
#include "support/oracles.hpp"

using namespace sagin;

TEST_CASE("free-space satellite gain: frozen values") {
  // (c / (4 pi fc))^2 at 5 GHz with c = 2.99792458e8, then d^-alpha.
  CHECK(vleo_gain(1.0, 5e9, 1.5) ==
        doctest::Approx(2.2765734628573807e-05).epsilon(1e-12));
  CHECK(vleo_gain(200000.0, 5e9, 1.5) ==
        doctest::Approx(2.545286509360598e-13).epsilon(1e-12));
  CHECK_THROWS_AS(vleo_gain(0.0, 5e9, 1.5), std::domain_error);
}

TEST_CASE("terrestrial gain: h * d^-alpha and Rayleigh-power statistics") {
  CHECK(terrestrial_gain_from(1.0, 100.0, 1.5) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(terrestrial_gain_from(2.5, 1.0, 1.5) == doctest::Approx(2.5));
  CHECK_THROWS_AS(terrestrial_gain_from(-0.1, 10.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(terrestrial_gain_from(1.0, 0.0, 1.5), std::domain_error);

  // |h|^2 with Rayleigh amplitude is Exp(1): unit mean, exp tail.
  Rng rng = make_stream(21, "fading");
  const int n = 200000;
  double sum = 0.0;
  int above1 = 0;
  for (int i = 0; i < n; ++i) {
    const double g = sample_terrestrial_gain(1.0, 1.5, rng);  // d = 1 isolates h
    sum += g;
    if (g > 1.0) ++above1;
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK((double)above1 / n == doctest::Approx(std::exp(-1.0)).epsilon(0.02));
}

TEST_CASE("vUAV gain: deterministic Rician composition") {
  // re = im = 0 leaves only the LoS phasor R/(R+1).
  const double d = 100.0, h0 = 1e-3, alpha = 1.5, R = 6.0;
  CHECK(vuav_gain_from(0.0, 0.0, d, h0, alpha, R) ==
        doctest::Approx(h0 * std::pow(d, -alpha) * (R / (R + 1.0))).epsilon(1e-12));
  CHECK(vuav_gain_from(0.0, 0.0, 100.0, 1e-3, 1.5, 6.0) ==
        doctest::Approx(8.57142857142857e-07).epsilon(1e-12));
  // Arbitrary scatter component cross-checked against the oracle arithmetic.
  CHECK(vuav_gain_from(0.3, -0.8, 57.0, h0, alpha, R) ==
        doctest::Approx(oracle::uav_gain(0.3, -0.8, 57.0, h0, alpha, R))
            .epsilon(1e-12));
  CHECK_THROWS_AS(vuav_gain_from(0.0, 0.0, -5.0, h0, alpha, R), std::domain_error);
}

TEST_CASE("vUAV fading magnitude matches the Rice-density mean") {
  const double analytic = oracle::rician_mean_quadrature(6.0);
  CHECK(analytic == doctest::Approx(0.8631163567642383).epsilon(1e-9));
  ScenarioConfig cfg;
  Rng rng = make_stream(22, "fading");
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_vuav_gain(1.0, cfg, rng) / cfg.ref_gain;
  CHECK(sum / n == doctest::Approx(analytic).epsilon(0.005));
}

TEST_CASE("rate kernel: frozen value, zero cases, domain errors") {
  ScenarioConfig cfg;
  // p*g = 1e-9 against the subchannel noise floor only.
  CHECK(subchannel_rate(1.0, 1e-9, 0.0, cfg) ==
        doctest::Approx(7444138.260712313).epsilon(1e-12));
  CHECK(subchannel_rate(0.0, 1e-9, 0.0, cfg) == 0.0);
  CHECK(subchannel_rate(1.0, 0.0, 5.0, cfg) == 0.0);
  CHECK_THROWS_AS(subchannel_rate(-1.0, 1e-9, 0.0, cfg), std::domain_error);
  CHECK_THROWS_AS(subchannel_rate(1.0, -1e-9, 0.0, cfg), std::domain_error);
  CHECK_THROWS_AS(subchannel_rate(1.0, 1e-9, -1.0, cfg), std::domain_error);
  // Interference strictly lowers the rate.
  CHECK(subchannel_rate(1.0, 1e-9, 1e-10, cfg) < subchannel_rate(1.0, 1e-9, 0.0, cfg));
}

TEST_CASE("inter-cell interference primitive: exact masked sum") {
  // Two cells, one user, two subchannels.
  Cube p(1, 2, 2), g(1, 2, 2);
  p(0, 0, 0) = 2.0;
  p(0, 1, 0) = 3.0;
  p(0, 1, 1) = 7.0;
  g(0, 0, 0) = 0.5;
  g(0, 1, 0) = 0.25;
  g(0, 1, 1) = 0.1;
  CHECK(interference_vbs(0, 0, 0, p, g) == doctest::Approx(3.0 * 0.25));
  CHECK(interference_vbs(0, 1, 0, p, g) == doctest::Approx(2.0 * 0.5));
  CHECK(interference_vbs(0, 0, 1, p, g) == doctest::Approx(7.0 * 0.1));
  CHECK(interference_vuav(0, 0, 0, p, g) == interference_vbs(0, 0, 0, p, g));
}

TEST_CASE("full realization: shapes, satellite determinism, reproducibility") {
  ScenarioConfig cfg;
  Rng topo = make_stream(31, "topology"), arr = make_stream(31, "arrivals");
  const TopologyState st = init_topology(cfg, topo, arr);

  Rng f1 = make_stream(31, "fading");
  const ChannelRealization g1 = sample_realization(st, cfg, f1);
  for (int s = 0; s < kNumClasses; ++s) {
    CHECK(g1.g_vbs[s].d0 == cfg.users_per_class[s]);
    CHECK(g1.g_vbs[s].d1 == cfg.num_vbs);
    CHECK(g1.g_vbs[s].d2 == cfg.num_subchannels);
    CHECK(g1.g_vuav[s].d1 == cfg.num_vuav);
    CHECK(g1.g_vleo[s].rows == cfg.users_per_class[s]);
    CHECK(g1.g_vleo[s].cols == cfg.num_subchannels);
  }
  // The satellite link has no small-scale fading: identical across users and
  // subchannels, equal to the frozen free-space value at the orbit height.
  const double expect = 2.545286509360598e-13;
  for (int s = 0; s < kNumClasses; ++s)
    for (int k = 0; k < cfg.users_per_class[s]; ++k)
      for (int n = 0; n < cfg.num_subchannels; ++n)
        CHECK(g1.g_vleo[s](k, n) == doctest::Approx(expect).epsilon(1e-12));

  // Same stream state => identical draw; advancing the stream => different.
  Rng f2 = make_stream(31, "fading");
  const ChannelRealization g2 = sample_realization(st, cfg, f2);
  CHECK(g1.g_vbs[0](0, 0, 0) == g2.g_vbs[0](0, 0, 0));
  CHECK(g1.g_vuav[2](3, 1, 4) == g2.g_vuav[2](3, 1, 4));
  const ChannelRealization g3 = sample_realization(st, cfg, f2);
  CHECK(g1.g_vbs[0](0, 0, 0) != g3.g_vbs[0](0, 0, 0));

  // All gains positive and finite.
  for (int n = 0; n < cfg.num_subchannels; ++n) {
    CHECK(g1.g_vbs[0](0, 0, n) > 0.0);
    CHECK(std::isfinite(g1.g_vuav[1](0, 0, n)));
  }
}

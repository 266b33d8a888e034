// config.hpp - scenario and training constants, plus the flat key=value loader.
// Defaults reproduce the reference deployment: 3000 m x 3000 m area, 2 vBSs,
// 3 vUAVs at 100 m, one vLEO at 200 km, 30 MHz split into 7 subchannels.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sagin/util.hpp"

namespace sagin {

constexpr int kNumClasses = 3;            // 1: throughput, 2: delay, 3: coverage
constexpr double kLightSpeed = 2.99792458e8;

struct ScenarioConfig {
  // --- geometry ---
  double area_side_m = 3000.0;
  int num_vbs = 2;                                   // M
  int num_vuav = 3;                                  // V
  std::vector<Vec2> vbs_xy = {{1000.0, 1000.0}, {2000.0, 2000.0}};
  std::vector<Vec2> vuav_start_xy = {{500.0, 500.0}, {1500.0, 1500.0}, {2500.0, 2500.0}};
  double vuav_altitude_m = 100.0;
  double vleo_altitude_m = 200000.0;
  double vuav_min_spacing_m = 100.0;                 // d_min
  double density_ratio = 5.0;                        // dense : sparse user density
  // dense zone is the square [0, area_side/2]^2

  // --- radio ---
  std::array<int, kNumClasses> users_per_class = {11, 11, 11};  // K_s
  int num_subchannels = 7;                           // N per component type
  double bandwidth_hz = 30e6;                        // B
  double vbs_power_w = 10.0;                         // 10 dBW
  double vuav_power_w = 100.0;                       // 20 dBW
  double vleo_power_w = 1000.0;                      // 30 dBW
  double noise_psd_w_hz = 1e-16;                     // -130 dBm/Hz
  double carrier_hz = 5e9;
  double path_loss_exp = 1.5;                        // alpha
  double rician_factor = 6.0;                        // R
  double ref_gain = 1e-3;                            // h0 = -30 dB at 1 m
  double leo_rate_cap_bps = 100e6;                   // per-user vLEO ceiling

  // --- traffic / timing ---
  double slot_s = 0.1;                               // TS duration delta
  double delay_budget_s = 0.2;                       // beta
  double class2_arrival_bps = 0.0;                   // lambda2; 0 = derive 10 kbps * K_2
  double packet_bits = 1000.0;                       // class-2 packet size

  // --- learning ---
  int episodes = 20;                                 // E
  int timesteps = 1000;                              // T per episode
  uint64_t seed = 1;
  double gamma = 0.95;
  double tau = 0.001;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  int central_buffer_capacity = 10000;
  int central_minibatch = 100;
  int dist_buffer_capacity = 2000;
  int dist_minibatch = 50;
  int hidden_width = 100;
  int hidden_layers = 2;
  double explore_sigma_start = 0.2;
  double explore_sigma_end = 0.02;
  std::string noise_kind = "gaussian";               // gaussian | ou
  double share_floor = 0.05;                         // minimum eta/rho share per class

  double lambda2_bps() const {
    return class2_arrival_bps > 0.0 ? class2_arrival_bps
                                    : 10e3 * users_per_class[1];
  }
  double per_user_arrival_bps() const { return lambda2_bps() / users_per_class[1]; }
  int total_users() const {
    return users_per_class[0] + users_per_class[1] + users_per_class[2];
  }
  int num_components() const { return num_vbs + num_vuav + 1; }
  double subchannel_hz() const { return bandwidth_hz / num_subchannels; }
  double delay_penalty_s() const { return 10.0 * delay_budget_s; }
};

// Parse a flat key=value file ('#' comments). Unknown keys and malformed values
// are rejected with the offending key named. Returns defaults for absent keys.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

// Canonical snapshot of every field, parseable by parse_config_text.
std::string config_to_text(const ScenarioConfig& cfg);

// Field sanity (counts positive, powers positive, factors in range, ...).
// Throws std::invalid_argument naming the first offending field.
void validate_config(const ScenarioConfig& cfg);

}  // namespace sagin

// config.cpp - key=value scenario file parsing and validation.
#include "sagin/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sagin {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& val) {
  size_t pos = 0;
  double x;
  try {
    x = std::stod(val, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad numeric value '" + val + "'");
  }
  if (pos != val.size())
    throw std::invalid_argument("config key '" + key + "': trailing junk in '" + val + "'");
  return x;
}

long long parse_int(const std::string& key, const std::string& val) {
  double x = parse_double(key, val);
  long long i = (long long)x;
  if (double(i) != x)
    throw std::invalid_argument("config key '" + key + "': expected integer, got '" + val + "'");
  return i;
}

// "x1,y1;x2,y2;..." -> points
std::vector<Vec2> parse_points(const std::string& key, const std::string& val) {
  std::vector<Vec2> pts;
  std::stringstream ss(val);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t comma = item.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("config key '" + key + "': point '" + item +
                                  "' needs 'x,y'");
    pts.push_back({parse_double(key, trim(item.substr(0, comma))),
                   parse_double(key, trim(item.substr(comma + 1)))});
  }
  if (pts.empty())
    throw std::invalid_argument("config key '" + key + "': no points given");
  return pts;
}

std::string points_to_text(const std::vector<Vec2>& pts) {
  std::string out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ";";
    out += fmt_g(pts[i].x) + "," + fmt_g(pts[i].y);
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"area_side_m", [&](auto& k, auto& v) { cfg.area_side_m = parse_double(k, v); }},
      {"num_vbs", [&](auto& k, auto& v) { cfg.num_vbs = (int)parse_int(k, v); }},
      {"num_vuav", [&](auto& k, auto& v) { cfg.num_vuav = (int)parse_int(k, v); }},
      {"vbs_xy", [&](auto& k, auto& v) { cfg.vbs_xy = parse_points(k, v); }},
      {"vuav_start_xy", [&](auto& k, auto& v) { cfg.vuav_start_xy = parse_points(k, v); }},
      {"vuav_altitude_m", [&](auto& k, auto& v) { cfg.vuav_altitude_m = parse_double(k, v); }},
      {"vleo_altitude_m", [&](auto& k, auto& v) { cfg.vleo_altitude_m = parse_double(k, v); }},
      {"vuav_min_spacing_m", [&](auto& k, auto& v) { cfg.vuav_min_spacing_m = parse_double(k, v); }},
      {"density_ratio", [&](auto& k, auto& v) { cfg.density_ratio = parse_double(k, v); }},
      {"users_class1", [&](auto& k, auto& v) { cfg.users_per_class[0] = (int)parse_int(k, v); }},
      {"users_class2", [&](auto& k, auto& v) { cfg.users_per_class[1] = (int)parse_int(k, v); }},
      {"users_class3", [&](auto& k, auto& v) { cfg.users_per_class[2] = (int)parse_int(k, v); }},
      {"num_subchannels", [&](auto& k, auto& v) { cfg.num_subchannels = (int)parse_int(k, v); }},
      {"bandwidth_hz", [&](auto& k, auto& v) { cfg.bandwidth_hz = parse_double(k, v); }},
      {"vbs_power_w", [&](auto& k, auto& v) { cfg.vbs_power_w = parse_double(k, v); }},
      {"vuav_power_w", [&](auto& k, auto& v) { cfg.vuav_power_w = parse_double(k, v); }},
      {"vleo_power_w", [&](auto& k, auto& v) { cfg.vleo_power_w = parse_double(k, v); }},
      {"noise_psd_w_hz", [&](auto& k, auto& v) { cfg.noise_psd_w_hz = parse_double(k, v); }},
      {"carrier_hz", [&](auto& k, auto& v) { cfg.carrier_hz = parse_double(k, v); }},
      {"path_loss_exp", [&](auto& k, auto& v) { cfg.path_loss_exp = parse_double(k, v); }},
      {"rician_factor", [&](auto& k, auto& v) { cfg.rician_factor = parse_double(k, v); }},
      {"ref_gain", [&](auto& k, auto& v) { cfg.ref_gain = parse_double(k, v); }},
      {"leo_rate_cap_bps", [&](auto& k, auto& v) { cfg.leo_rate_cap_bps = parse_double(k, v); }},
      {"slot_s", [&](auto& k, auto& v) { cfg.slot_s = parse_double(k, v); }},
      {"delay_budget_s", [&](auto& k, auto& v) { cfg.delay_budget_s = parse_double(k, v); }},
      {"class2_arrival_bps", [&](auto& k, auto& v) { cfg.class2_arrival_bps = parse_double(k, v); }},
      {"packet_bits", [&](auto& k, auto& v) { cfg.packet_bits = parse_double(k, v); }},
      {"episodes", [&](auto& k, auto& v) { cfg.episodes = (int)parse_int(k, v); }},
      {"timesteps", [&](auto& k, auto& v) { cfg.timesteps = (int)parse_int(k, v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = (uint64_t)parse_int(k, v); }},
      {"gamma", [&](auto& k, auto& v) { cfg.gamma = parse_double(k, v); }},
      {"tau", [&](auto& k, auto& v) { cfg.tau = parse_double(k, v); }},
      {"actor_lr", [&](auto& k, auto& v) { cfg.actor_lr = parse_double(k, v); }},
      {"critic_lr", [&](auto& k, auto& v) { cfg.critic_lr = parse_double(k, v); }},
      {"central_buffer_capacity", [&](auto& k, auto& v) { cfg.central_buffer_capacity = (int)parse_int(k, v); }},
      {"central_minibatch", [&](auto& k, auto& v) { cfg.central_minibatch = (int)parse_int(k, v); }},
      {"dist_buffer_capacity", [&](auto& k, auto& v) { cfg.dist_buffer_capacity = (int)parse_int(k, v); }},
      {"dist_minibatch", [&](auto& k, auto& v) { cfg.dist_minibatch = (int)parse_int(k, v); }},
      {"hidden_width", [&](auto& k, auto& v) { cfg.hidden_width = (int)parse_int(k, v); }},
      {"hidden_layers", [&](auto& k, auto& v) { cfg.hidden_layers = (int)parse_int(k, v); }},
      {"explore_sigma_start", [&](auto& k, auto& v) { cfg.explore_sigma_start = parse_double(k, v); }},
      {"explore_sigma_end", [&](auto& k, auto& v) { cfg.explore_sigma_end = parse_double(k, v); }},
      {"noise_kind", [&](auto&, auto& v) { cfg.noise_kind = trim(v); }},
      {"share_floor", [&](auto& k, auto& v) { cfg.share_floor = parse_double(k, v); }},
  };

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    it->second(key, val);
  }
  validate_config(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_text(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "area_side_m = " << fmt_g(c.area_side_m) << "\n"
    << "num_vbs = " << c.num_vbs << "\n"
    << "num_vuav = " << c.num_vuav << "\n"
    << "vbs_xy = " << points_to_text(c.vbs_xy) << "\n"
    << "vuav_start_xy = " << points_to_text(c.vuav_start_xy) << "\n"
    << "vuav_altitude_m = " << fmt_g(c.vuav_altitude_m) << "\n"
    << "vleo_altitude_m = " << fmt_g(c.vleo_altitude_m) << "\n"
    << "vuav_min_spacing_m = " << fmt_g(c.vuav_min_spacing_m) << "\n"
    << "density_ratio = " << fmt_g(c.density_ratio) << "\n"
    << "users_class1 = " << c.users_per_class[0] << "\n"
    << "users_class2 = " << c.users_per_class[1] << "\n"
    << "users_class3 = " << c.users_per_class[2] << "\n"
    << "num_subchannels = " << c.num_subchannels << "\n"
    << "bandwidth_hz = " << fmt_g(c.bandwidth_hz) << "\n"
    << "vbs_power_w = " << fmt_g(c.vbs_power_w) << "\n"
    << "vuav_power_w = " << fmt_g(c.vuav_power_w) << "\n"
    << "vleo_power_w = " << fmt_g(c.vleo_power_w) << "\n"
    << "noise_psd_w_hz = " << fmt_g(c.noise_psd_w_hz) << "\n"
    << "carrier_hz = " << fmt_g(c.carrier_hz) << "\n"
    << "path_loss_exp = " << fmt_g(c.path_loss_exp) << "\n"
    << "rician_factor = " << fmt_g(c.rician_factor) << "\n"
    << "ref_gain = " << fmt_g(c.ref_gain) << "\n"
    << "leo_rate_cap_bps = " << fmt_g(c.leo_rate_cap_bps) << "\n"
    << "slot_s = " << fmt_g(c.slot_s) << "\n"
    << "delay_budget_s = " << fmt_g(c.delay_budget_s) << "\n"
    << "class2_arrival_bps = " << fmt_g(c.class2_arrival_bps) << "\n"
    << "packet_bits = " << fmt_g(c.packet_bits) << "\n"
    << "episodes = " << c.episodes << "\n"
    << "timesteps = " << c.timesteps << "\n"
    << "seed = " << c.seed << "\n"
    << "gamma = " << fmt_g(c.gamma) << "\n"
    << "tau = " << fmt_g(c.tau) << "\n"
    << "actor_lr = " << fmt_g(c.actor_lr) << "\n"
    << "critic_lr = " << fmt_g(c.critic_lr) << "\n"
    << "central_buffer_capacity = " << c.central_buffer_capacity << "\n"
    << "central_minibatch = " << c.central_minibatch << "\n"
    << "dist_buffer_capacity = " << c.dist_buffer_capacity << "\n"
    << "dist_minibatch = " << c.dist_minibatch << "\n"
    << "hidden_width = " << c.hidden_width << "\n"
    << "hidden_layers = " << c.hidden_layers << "\n"
    << "explore_sigma_start = " << fmt_g(c.explore_sigma_start) << "\n"
    << "explore_sigma_end = " << fmt_g(c.explore_sigma_end) << "\n"
    << "noise_kind = " << c.noise_kind << "\n"
    << "share_floor = " << fmt_g(c.share_floor) << "\n";
  return o.str();
}

void validate_config(const ScenarioConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "' " + why);
  };
  if (c.area_side_m <= 0) fail("area_side_m", "must be > 0");
  if (c.num_vbs < 1) fail("num_vbs", "must be >= 1");
  if (c.num_vuav < 1) fail("num_vuav", "must be >= 1");
  if ((int)c.vbs_xy.size() != c.num_vbs) fail("vbs_xy", "must list num_vbs points");
  if ((int)c.vuav_start_xy.size() != c.num_vuav)
    fail("vuav_start_xy", "must list num_vuav points");
  if (c.vuav_altitude_m <= 0) fail("vuav_altitude_m", "must be > 0");
  if (c.vleo_altitude_m <= 0) fail("vleo_altitude_m", "must be > 0");
  if (c.vuav_min_spacing_m < 0) fail("vuav_min_spacing_m", "must be >= 0");
  if (c.density_ratio <= 0) fail("density_ratio", "must be > 0");
  for (int s = 0; s < kNumClasses; ++s)
    if (c.users_per_class[s] < 1)
      fail("users_class" + std::to_string(s + 1), "must be >= 1");
  if (c.num_subchannels < 1) fail("num_subchannels", "must be >= 1");
  if (c.bandwidth_hz <= 0) fail("bandwidth_hz", "must be > 0");
  if (c.vbs_power_w <= 0) fail("vbs_power_w", "must be > 0");
  if (c.vuav_power_w <= 0) fail("vuav_power_w", "must be > 0");
  if (c.vleo_power_w <= 0) fail("vleo_power_w", "must be > 0");
  if (c.noise_psd_w_hz <= 0) fail("noise_psd_w_hz", "must be > 0");
  if (c.carrier_hz <= 0) fail("carrier_hz", "must be > 0");
  if (c.path_loss_exp <= 0) fail("path_loss_exp", "must be > 0");
  if (c.rician_factor < 0) fail("rician_factor", "must be >= 0");
  if (c.ref_gain <= 0) fail("ref_gain", "must be > 0");
  if (c.leo_rate_cap_bps <= 0) fail("leo_rate_cap_bps", "must be > 0");
  if (c.slot_s <= 0) fail("slot_s", "must be > 0");
  if (c.delay_budget_s <= 0) fail("delay_budget_s", "must be > 0");
  if (c.class2_arrival_bps < 0) fail("class2_arrival_bps", "must be >= 0");
  if (c.packet_bits <= 0) fail("packet_bits", "must be > 0");
  if (c.episodes < 1) fail("episodes", "must be >= 1");
  if (c.timesteps < 1) fail("timesteps", "must be >= 1");
  if (c.gamma < 0 || c.gamma >= 1) fail("gamma", "must be in [0,1)");
  if (c.tau <= 0 || c.tau > 1) fail("tau", "must be in (0,1]");
  if (c.actor_lr <= 0) fail("actor_lr", "must be > 0");
  if (c.critic_lr <= 0) fail("critic_lr", "must be > 0");
  if (c.central_buffer_capacity < 1) fail("central_buffer_capacity", "must be >= 1");
  if (c.central_minibatch < 1) fail("central_minibatch", "must be >= 1");
  if (c.dist_buffer_capacity < 1) fail("dist_buffer_capacity", "must be >= 1");
  if (c.dist_minibatch < 1) fail("dist_minibatch", "must be >= 1");
  if (c.hidden_width < 1) fail("hidden_width", "must be >= 1");
  if (c.hidden_layers < 1) fail("hidden_layers", "must be >= 1");
  if (c.explore_sigma_start < 0) fail("explore_sigma_start", "must be >= 0");
  if (c.explore_sigma_end < 0) fail("explore_sigma_end", "must be >= 0");
  if (c.noise_kind != "gaussian" && c.noise_kind != "ou")
    fail("noise_kind", "must be 'gaussian' or 'ou'");
  if (c.share_floor < 0 || c.share_floor >= 1.0 / 3.0)
    fail("share_floor", "must be in [0, 1/3)");
}

}  // namespace sagin

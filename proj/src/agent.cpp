// agent.cpp - DDPG actor/critic updates shared by every agent in the system.
#include "sagin/agent.hpp"

#include <algorithm>
#include <cmath>

namespace sagin {

namespace {
std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}
}  // namespace

DdpgAgent make_agent(const std::vector<int>& actor_dims,
                     const std::vector<int>& critic_dims, double actor_lr,
                     double critic_lr, double gamma, double tau, Rng& init_rng) {
  if (critic_dims.front() != actor_dims.front() + actor_dims.back())
    throw std::invalid_argument(
        "make_agent: critic input must be obs_len + act_len");
  if (critic_dims.back() != 1)
    throw std::invalid_argument("make_agent: critic output must be scalar");
  DdpgAgent a;
  a.actor = init_mlp(actor_dims, actor_lr, init_rng);
  a.critic = init_mlp(critic_dims, critic_lr, init_rng);
  a.actor_target = a.actor;
  a.critic_target = a.critic;
  a.gamma = gamma;
  a.tau = tau;
  a.ou_state.assign(actor_dims.back(), 0.0);
  return a;
}

std::vector<double> policy(const DdpgAgent& agent, const std::vector<double>& obs) {
  return forward(agent.actor, obs).output();
}

std::vector<double> select_action(DdpgAgent& agent, const std::vector<double>& obs,
                                  double sigma, const std::string& kind, Rng& rng) {
  std::vector<double> a = policy(agent, obs);
  if (sigma > 0.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    if (kind == "ou") {
      constexpr double theta = 0.15;  // mean-reversion rate
      for (size_t i = 0; i < a.size(); ++i) {
        agent.ou_state[i] += -theta * agent.ou_state[i] + sigma * n(rng);
        a[i] += agent.ou_state[i];
      }
    } else {
      for (auto& x : a) x += sigma * n(rng);
    }
  }
  for (auto& x : a) x = std::clamp(x, 0.0, 1.0);
  return a;
}

double critic_target_value(const DdpgAgent& agent, const Transition& tr) {
  const std::vector<double> a2 = forward(agent.actor_target, tr.next_obs).output();
  const double q2 = forward(agent.critic_target, concat(tr.next_obs, a2)).output()[0];
  return tr.reward + agent.gamma * q2;
}

double update_critic(DdpgAgent& agent, const std::vector<const Transition*>& batch) {
  if (batch.empty()) throw std::invalid_argument("update_critic: empty batch");
  const double inv_b = 1.0 / (double)batch.size();
  Gradients total = zero_gradients(agent.critic);
  double loss = 0.0;
  for (const Transition* tr : batch) {
    const double y = critic_target_value(agent, *tr);
    const ForwardCache cache = forward(agent.critic, concat(tr->obs, tr->act));
    const double q = cache.output()[0];
    loss += (q - y) * (q - y) * inv_b;
    const Gradients g = backward(agent.critic, cache, {2.0 * (q - y) * inv_b});
    accumulate(total, g, 1.0);
  }
  if (!std::isfinite(loss)) throw numerical_error("update_critic: non-finite loss");
  sgd_step(agent.critic, total, Direction::Descend);
  return loss;
}

double update_actor(DdpgAgent& agent, const std::vector<const Transition*>& batch) {
  if (batch.empty()) throw std::invalid_argument("update_actor: empty batch");
  const double inv_b = 1.0 / (double)batch.size();
  const int obs_len = agent.obs_len();
  const int act_len = agent.act_len();
  Gradients total = zero_gradients(agent.actor);
  double mean_q = 0.0;
  for (const Transition* tr : batch) {
    const ForwardCache actor_cache = forward(agent.actor, tr->obs);
    const std::vector<double>& a = actor_cache.output();
    const ForwardCache critic_cache = forward(agent.critic, concat(tr->obs, a));
    mean_q += critic_cache.output()[0] * inv_b;
    // dQ/da is the action slice of the critic's input gradient.
    const Gradients cg = backward(agent.critic, critic_cache, {1.0});
    std::vector<double> dq_da(cg.dx.begin() + obs_len,
                              cg.dx.begin() + obs_len + act_len);
    for (auto& x : dq_da) x *= inv_b;
    const Gradients ag = backward(agent.actor, actor_cache, dq_da);
    accumulate(total, ag, 1.0);
  }
  if (!std::isfinite(mean_q))
    throw numerical_error("update_actor: non-finite objective");
  sgd_step(agent.actor, total, Direction::Ascend);
  return mean_q;
}

void soft_update_agent(DdpgAgent& agent) {
  soft_update(agent.actor_target, agent.actor, agent.tau);
  soft_update(agent.critic_target, agent.critic, agent.tau);
}

void save_agent(const DdpgAgent& agent, const std::string& dir,
                const std::string& stem) {
  save_checkpoint(agent.actor, dir + "/" + stem + "_actor.bin");
  save_checkpoint(agent.critic, dir + "/" + stem + "_critic.bin");
  save_checkpoint(agent.actor_target, dir + "/" + stem + "_actor_target.bin");
  save_checkpoint(agent.critic_target, dir + "/" + stem + "_critic_target.bin");
}

DdpgAgent load_agent(const std::string& dir, const std::string& stem, double gamma,
                     double tau) {
  DdpgAgent a;
  a.actor = load_checkpoint(dir + "/" + stem + "_actor.bin");
  a.critic = load_checkpoint(dir + "/" + stem + "_critic.bin");
  a.actor_target = load_checkpoint(dir + "/" + stem + "_actor_target.bin");
  a.critic_target = load_checkpoint(dir + "/" + stem + "_critic_target.bin");
  a.gamma = gamma;
  a.tau = tau;
  a.ou_state.assign(a.actor.output_len(), 0.0);
  return a;
}

}  // namespace sagin

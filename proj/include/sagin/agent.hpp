// agent.hpp - replay memory and a single DDPG learner (actor-critic with
// target copies). The orchestrator composes one central and three
// distributed instances of this.
#pragma once

#include <deque>
#include <string>
#include <vector>

#include "sagin/neural.hpp"
#include "sagin/rng.hpp"

namespace sagin {

// Fixed-capacity FIFO ring with uniform without-replacement sampling.
template <typename T>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("ReplayBuffer: capacity >= 1");
  }

  void push(T item) {
    if ((int)items_.size() == capacity_) items_.pop_front();
    items_.push_back(std::move(item));
  }

  int size() const { return (int)items_.size(); }
  int capacity() const { return capacity_; }
  const T& operator[](int i) const { return items_[i]; }

  // Uniform sample of distinct indices (partial Fisher-Yates). n must not
  // exceed the current size; n == size yields a permutation.
  std::vector<int> sample_indices(int n, Rng& rng) const {
    if (n < 0 || n > (int)items_.size())
      throw std::invalid_argument("ReplayBuffer: bad sample size");
    std::vector<int> idx(items_.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> pick(i, (int)idx.size() - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(n);
    return idx;
  }

 private:
  int capacity_;
  std::deque<T> items_;
};

// One four-tuple of experience.
struct Transition {
  std::vector<double> obs;
  std::vector<double> act;
  double reward = 0.0;
  std::vector<double> next_obs;
};

struct DdpgAgent {
  Mlp actor, critic;
  Mlp actor_target, critic_target;
  double gamma = 0.95;
  double tau = 0.001;
  std::vector<double> ou_state;  // only used by the OU noise variant

  int obs_len() const { return actor.input_len(); }
  int act_len() const { return actor.output_len(); }
};

DdpgAgent make_agent(const std::vector<int>& actor_dims,
                     const std::vector<int>& critic_dims, double actor_lr,
                     double critic_lr, double gamma, double tau, Rng& init_rng);

// Deterministic policy output.
std::vector<double> policy(const DdpgAgent& agent, const std::vector<double>& obs);

// Policy plus exploration noise, clipped to [0,1]. kind: "gaussian" | "ou".
std::vector<double> select_action(DdpgAgent& agent, const std::vector<double>& obs,
                                  double sigma, const std::string& kind, Rng& rng);

// y = r + gamma * Q_target(o', mu_target(o')).
double critic_target_value(const DdpgAgent& agent, const Transition& tr);

// One mini-batch critic step (TD regression, gradient descent).
// Returns the pre-update mean squared TD error.
double update_critic(DdpgAgent& agent, const std::vector<const Transition*>& batch);

// One mini-batch deterministic policy-gradient step (gradient ascent on
// mean Q(o, mu(o))). Returns the pre-update mean Q estimate.
double update_actor(DdpgAgent& agent, const std::vector<const Transition*>& batch);

// Polyak-average both target networks toward the online ones.
void soft_update_agent(DdpgAgent& agent);

// Checkpoint all four networks under dir with the given stem.
void save_agent(const DdpgAgent& agent, const std::string& dir,
                const std::string& stem);
DdpgAgent load_agent(const std::string& dir, const std::string& stem, double gamma,
                     double tau);

}  // namespace sagin

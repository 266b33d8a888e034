// neural.hpp - plain fully-connected networks: ReLU hidden layers, sigmoid
// output layer, explicit backprop, SGD with ascend/descend direction, Polyak
// soft target updates and checksummed binary checkpoints.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sagin/rng.hpp"
#include "sagin/util.hpp"

namespace sagin {

struct Mlp {
  std::vector<int> dims;              // [in, hidden..., out]
  std::vector<Mat> w;                 // w[l]: dims[l+1] x dims[l]
  std::vector<std::vector<double>> b; // b[l]: dims[l+1]
  double lr = 1e-3;

  int num_layers() const { return (int)w.size(); }
  int input_len() const { return dims.front(); }
  int output_len() const { return dims.back(); }
  size_t num_params() const;
};

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) init, seeded.
Mlp init_mlp(const std::vector<int>& dims, double lr, Rng& rng);

struct ForwardCache {
  std::vector<std::vector<double>> z;  // pre-activations per layer
  std::vector<std::vector<double>> a;  // a[0] = input, a[L] = output
  const std::vector<double>& output() const { return a.back(); }
};

// Evaluate the network; the cache holds everything backward needs.
ForwardCache forward(const Mlp& net, const std::vector<double>& x);

struct Gradients {
  std::vector<Mat> dw;
  std::vector<std::vector<double>> db;
  std::vector<double> dx;  // gradient w.r.t. the input vector
};

// Standard backprop from dLoss/d(output). ReLU subgradient at 0 is 0.
Gradients backward(const Mlp& net, const ForwardCache& cache,
                   const std::vector<double>& dloss_dy);

enum class Direction { Descend, Ascend };

// In-place parameter step: theta -= lr * grad (Descend) or += (Ascend).
// Rejects non-finite gradients.
void sgd_step(Mlp& net, const Gradients& g, Direction dir);

void accumulate(Gradients& into, const Gradients& g, double scale);
Gradients zero_gradients(const Mlp& net);

// target = tau * online + (1 - tau) * target, element-wise.
void soft_update(Mlp& target, const Mlp& online, double tau);

// Versioned binary checkpoint with an FNV-1a payload checksum; round-trips
// bit-exactly. Loading rejects corrupted or mismatched files.
void save_checkpoint(const Mlp& net, const std::string& path);
Mlp load_checkpoint(const std::string& path);

}  // namespace sagin

// neural.cpp - forward/backward passes, SGD, soft updates, checkpoints.
#include "sagin/neural.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace sagin {

namespace {
inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}  // namespace

size_t Mlp::num_params() const {
  size_t n = 0;
  for (int l = 0; l < num_layers(); ++l) n += w[l].v.size() + b[l].size();
  return n;
}

Mlp init_mlp(const std::vector<int>& dims, double lr, Rng& rng) {
  if (dims.size() < 2) throw std::invalid_argument("init_mlp: need >= 2 dims");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("init_mlp: layer widths must be >= 1");
  Mlp net;
  net.dims = dims;
  net.lr = lr;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const double bound = 1.0 / std::sqrt((double)dims[l]);
    std::uniform_real_distribution<double> u(-bound, bound);
    Mat wl(dims[l + 1], dims[l]);
    for (auto& x : wl.v) x = u(rng);
    net.w.push_back(std::move(wl));
    std::vector<double> bl(dims[l + 1]);
    for (auto& x : bl) x = u(rng);
    net.b.push_back(std::move(bl));
  }
  return net;
}

ForwardCache forward(const Mlp& net, const std::vector<double>& x) {
  if ((int)x.size() != net.input_len())
    throw std::invalid_argument("forward: input length " + std::to_string(x.size()) +
                                " != expected " + std::to_string(net.input_len()));
  ForwardCache c;
  c.a.resize(net.num_layers() + 1);
  c.z.resize(net.num_layers());
  c.a[0] = x;
  for (int l = 0; l < net.num_layers(); ++l) {
    const Mat& W = net.w[l];
    std::vector<double>& z = c.z[l];
    z.assign(W.rows, 0.0);
    const std::vector<double>& in = c.a[l];
    for (int r = 0; r < W.rows; ++r) {
      double acc = net.b[l][r];
      const double* wr = &W.v[size_t(r) * W.cols];
      for (int q = 0; q < W.cols; ++q) acc += wr[q] * in[q];
      z[r] = acc;
    }
    std::vector<double>& out = c.a[l + 1];
    out.resize(W.rows);
    const bool last = (l == net.num_layers() - 1);
    for (int r = 0; r < W.rows; ++r)
      out[r] = last ? sigmoid(z[r]) : (z[r] > 0.0 ? z[r] : 0.0);
  }
  return c;
}

Gradients backward(const Mlp& net, const ForwardCache& cache,
                   const std::vector<double>& dloss_dy) {
  if ((int)dloss_dy.size() != net.output_len())
    throw std::invalid_argument("backward: gradient length mismatch");
  Gradients g = zero_gradients(net);
  const int L = net.num_layers();
  // delta = dLoss/dz at the current layer, starting from the sigmoid output.
  std::vector<double> delta(net.output_len());
  for (int r = 0; r < net.output_len(); ++r) {
    const double y = cache.a[L][r];
    delta[r] = dloss_dy[r] * y * (1.0 - y);
  }
  for (int l = L - 1; l >= 0; --l) {
    const Mat& W = net.w[l];
    const std::vector<double>& in = cache.a[l];
    for (int r = 0; r < W.rows; ++r) {
      g.db[l][r] = delta[r];
      double* dwr = &g.dw[l].v[size_t(r) * W.cols];
      for (int q = 0; q < W.cols; ++q) dwr[q] = delta[r] * in[q];
    }
    // Propagate to the previous layer (or the input itself at l = 0).
    std::vector<double> prev(W.cols, 0.0);
    for (int r = 0; r < W.rows; ++r) {
      const double* wr = &W.v[size_t(r) * W.cols];
      for (int q = 0; q < W.cols; ++q) prev[q] += wr[q] * delta[r];
    }
    if (l > 0) {
      for (int q = 0; q < W.cols; ++q)
        if (cache.z[l - 1][q] <= 0.0) prev[q] = 0.0;  // ReLU gate
      delta = std::move(prev);
    } else {
      g.dx = std::move(prev);
    }
  }
  return g;
}

Gradients zero_gradients(const Mlp& net) {
  Gradients g;
  for (int l = 0; l < net.num_layers(); ++l) {
    g.dw.emplace_back(net.w[l].rows, net.w[l].cols);
    g.db.emplace_back(net.b[l].size(), 0.0);
  }
  g.dx.assign(net.input_len(), 0.0);
  return g;
}

void accumulate(Gradients& into, const Gradients& g, double scale) {
  for (size_t l = 0; l < into.dw.size(); ++l) {
    for (size_t i = 0; i < into.dw[l].v.size(); ++i)
      into.dw[l].v[i] += scale * g.dw[l].v[i];
    for (size_t i = 0; i < into.db[l].size(); ++i)
      into.db[l][i] += scale * g.db[l][i];
  }
  for (size_t i = 0; i < into.dx.size(); ++i) into.dx[i] += scale * g.dx[i];
}

void sgd_step(Mlp& net, const Gradients& g, Direction dir) {
  const double step = dir == Direction::Descend ? -net.lr : net.lr;
  for (int l = 0; l < net.num_layers(); ++l) {
    for (size_t i = 0; i < net.w[l].v.size(); ++i) {
      if (!std::isfinite(g.dw[l].v[i]))
        throw numerical_error("sgd_step: non-finite weight gradient");
      net.w[l].v[i] += step * g.dw[l].v[i];
    }
    for (size_t i = 0; i < net.b[l].size(); ++i) {
      if (!std::isfinite(g.db[l][i]))
        throw numerical_error("sgd_step: non-finite bias gradient");
      net.b[l][i] += step * g.db[l][i];
    }
  }
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  if (target.dims != online.dims)
    throw std::invalid_argument("soft_update: mismatched layouts");
  for (int l = 0; l < target.num_layers(); ++l) {
    for (size_t i = 0; i < target.w[l].v.size(); ++i)
      target.w[l].v[i] = tau * online.w[l].v[i] + (1.0 - tau) * target.w[l].v[i];
    for (size_t i = 0; i < target.b[l].size(); ++i)
      target.b[l][i] = tau * online.b[l][i] + (1.0 - tau) * target.b[l][i];
  }
}

namespace {
constexpr char kMagic[4] = {'S', 'G', 'N', 'N'};
constexpr uint32_t kVersion = 1;

void put_u32(std::string& s, uint32_t x) { s.append((const char*)&x, 4); }
void put_f64(std::string& s, double x) { s.append((const char*)&x, 8); }
}  // namespace

void save_checkpoint(const Mlp& net, const std::string& path) {
  std::string payload;
  put_u32(payload, kVersion);
  put_u32(payload, (uint32_t)net.dims.size());
  for (int d : net.dims) put_u32(payload, (uint32_t)d);
  put_f64(payload, net.lr);
  for (int l = 0; l < net.num_layers(); ++l) {
    for (double x : net.w[l].v) put_f64(payload, x);
    for (double x : net.b[l]) put_f64(payload, x);
  }
  const uint64_t sum = fnv1a(payload.data(), payload.size());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out.write(kMagic, 4);
  out.write(payload.data(), (std::streamsize)payload.size());
  out.write((const char*)&sum, 8);
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Mlp load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (all.size() < 4 + 8 + 8 || std::memcmp(all.data(), kMagic, 4) != 0)
    throw std::runtime_error("load_checkpoint: bad file format in " + path);
  const std::string payload = all.substr(4, all.size() - 12);
  uint64_t stored;
  std::memcpy(&stored, all.data() + all.size() - 8, 8);
  if (fnv1a(payload.data(), payload.size()) != stored)
    throw std::runtime_error("load_checkpoint: checksum mismatch in " + path);

  size_t off = 0;
  auto get_u32 = [&]() {
    uint32_t x;
    std::memcpy(&x, payload.data() + off, 4);
    off += 4;
    return x;
  };
  auto get_f64 = [&]() {
    double x;
    std::memcpy(&x, payload.data() + off, 8);
    off += 8;
    return x;
  };
  const uint32_t version = get_u32();
  if (version != kVersion)
    throw std::runtime_error("load_checkpoint: unsupported version in " + path);
  const uint32_t nd = get_u32();
  std::vector<int> dims(nd);
  for (auto& d : dims) d = (int)get_u32();
  Mlp net;
  net.dims = dims;
  net.lr = get_f64();
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    Mat W(dims[l + 1], dims[l]);
    for (auto& x : W.v) x = get_f64();
    net.w.push_back(std::move(W));
    std::vector<double> bl(dims[l + 1]);
    for (auto& x : bl) x = get_f64();
    net.b.push_back(std::move(bl));
  }
  if (off != payload.size())
    throw std::runtime_error("load_checkpoint: size mismatch in " + path);
  return net;
}

}  // namespace sagin

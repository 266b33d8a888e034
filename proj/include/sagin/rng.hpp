// rng.hpp - one master seed fans out to named substreams so each randomness
// consumer (topology, fading, exploration noise, replay sampling, weight init)
// is independently reproducible.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "sagin/util.hpp"

namespace sagin {

using Rng = std::mt19937_64;

// Deterministic substream: hash the stream tag into the seed sequence.
inline Rng make_stream(uint64_t master_seed, const std::string& tag) {
  uint64_t th = fnv1a(tag);
  std::seed_seq seq{uint32_t(master_seed), uint32_t(master_seed >> 32),
                    uint32_t(th), uint32_t(th >> 32)};
  return Rng(seq);
}

// The substreams one full experiment run needs.
struct RngStreams {
  Rng topology;  // user placement
  Rng arrivals;  // traffic draws
  Rng fading;    // channel small-scale fading
  Rng noise;     // exploration noise
  Rng sampling;  // replay-buffer mini-batch sampling
  Rng init;      // network weight initialization

  explicit RngStreams(uint64_t master_seed)
      : topology(make_stream(master_seed, "topology")),
        arrivals(make_stream(master_seed, "arrivals")),
        fading(make_stream(master_seed, "fading")),
        noise(make_stream(master_seed, "noise")),
        sampling(make_stream(master_seed, "sampling")),
        init(make_stream(master_seed, "init")) {}
};

}  // namespace sagin

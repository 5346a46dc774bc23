#pragma once

#include <cstdint>

namespace wpg {

// SplitMix64; used only to expand (seed, stream) pairs into generator state.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t s) : state(s) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ with per-replicate substreams: replicate r of a job with seed
// s draws from Xoshiro256pp(s, r). Simulation output therefore depends only
// on (seed, replicate index), never on thread count or scheduling.
class Xoshiro256pp {
 public:
  Xoshiro256pp(uint64_t seed, uint64_t stream) {
    SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    for (auto& w : s_) w = sm.next();
    if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;  // all-zero state is invalid
  }

  uint64_t next() {
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0,1) with 53 random bits
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return u01() < p; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace wpg

#pragma once

#include <cstdint>

namespace ntfp {

// splitmix64. Sampling must be byte-for-byte reproducible across platforms
// and standard library versions, so no std::uniform_*_distribution here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // {0, .., k-1}; modulo bias is irrelevant at the k this project uses
  int below(int k) { return static_cast<int>(next() % static_cast<std::uint64_t>(k)); }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace ntfp

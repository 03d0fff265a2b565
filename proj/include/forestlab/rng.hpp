#pragma once

#include <cstdint>
#include <random>

#include "forestlab/bignum.hpp"

namespace forestlab {

// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// A reproducible random stream. The engine is std::mt19937_64 (its output
// sequence is fixed by the standard) seeded with
//   splitmix64_mix(master_seed + 0x9E3779B97F4A7C15 * (stream_index + 1)).
// Monte Carlo task i always uses stream_index i.
struct SeededStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  std::uint64_t engine_seed() const {
    return splitmix64_mix(master_seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1));
  }
};

class Rng {
 public:
  explicit Rng(const SeededStream& stream) : engine_(stream.engine_seed()) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, bound), bound >= 1, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double unit();
  // Uniform on [0, bound) for a positive big integer.
  BigCount big_below(const BigCount& bound);
  // Poisson(1) by inversion against a fixed 64-bit threshold table.
  unsigned poisson1();

 private:
  std::mt19937_64 engine_;
};

}  // namespace forestlab

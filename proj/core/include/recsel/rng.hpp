#pragma once

#include <cstdint>
#include <limits>

namespace recsel {

// xoshiro256++ engine. Satisfies UniformRandomBitGenerator so it can drive
// the <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0x9E3779B97F4A7C15ULL);

  // Independent stream for (master_seed, stream). Streams are derived by
  // hashing the pair, never by advancing a shared engine, so replicate r
  // always sees the same numbers whatever thread runs it.
  static Rng for_stream(std::uint64_t master_seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard exponential, mean 1.
  double exponential();

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace recsel

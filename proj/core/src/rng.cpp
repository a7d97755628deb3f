#include "recsel/rng.hpp"

#include <cmath>

namespace recsel {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

Rng Rng::for_stream(std::uint64_t master_seed, std::uint64_t stream) {
  std::uint64_t state = master_seed;
  std::uint64_t key = splitmix64(state);
  state = key ^ (stream * 0xD1B54A32D192ED03ULL);
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ stream;
  return Rng(splitmix64(state));
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  // 53 random mantissa bits, shifted half a step off zero.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

}  // namespace recsel

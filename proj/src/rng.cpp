#include "censbound/rng.hpp"

#include <cmath>

namespace censbound {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t init = seed ^ (kGolden * (stream + 1));
  for (auto& word : state_) word = splitmix64(init);
}

std::uint64_t StreamRng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double StreamRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double StreamRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double StreamRng::exponential(double rate) {
  return -std::log1p(-next_double()) / rate;
}

}  // namespace censbound

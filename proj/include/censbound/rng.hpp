#pragma once

#include <cstdint>

namespace censbound {

/// Deterministic per-stream generator: xoshiro256++ seeded by a splitmix64
/// expansion of (seed, stream). Draws depend only on the pair, so replication
/// results are identical for any worker count. Inverse-CDF transforms are
/// used throughout instead of <random> distributions, whose sequences are
/// implementation-defined.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double next_double();

  double uniform(double lo, double hi);

  // Exponential with the given rate via inverse CDF.
  double exponential(double rate);

 private:
  std::uint64_t state_[4];
};

}  // namespace censbound

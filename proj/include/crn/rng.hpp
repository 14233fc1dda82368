#pragma once

#include <cstdint>
#include <random>

#include "crn/rational.hpp"

namespace crn {

// Deterministic random source. The mt19937_64 stream is fixed by the
// standard, and every derived quantity (bounded integers, rationals) is
// produced by rejection sampling here rather than through
// std::uniform_int_distribution, whose mapping is implementation-defined.
// Same seed, same platform-independent sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi);

  // Uniform over { k/den : num_lo <= k <= num_hi }.
  Rat rat_with_denominator(const Int& num_lo, const Int& num_hi,
                           const Int& den);

 private:
  std::mt19937_64 gen_;
};

}  // namespace crn

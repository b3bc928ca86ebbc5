#pragma once

#include <cstdint>

#include "workbench/natural.hpp"

namespace workbench {

// Deterministic, splittable random source (splitmix64). Every randomized
// operation takes one of these explicitly; there is no ambient global
// randomness, so a fixed seed reproduces a run bit for bit. A generator is
// single-owner: to share randomness across threads or subprotocols, split()
// off independent streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Uniform in [0, bound); bound must be >= 1.
  std::uint64_t below_u64(std::uint64_t bound);
  Natural below(const Natural& bound);
  // Uniform in [lo, hi], inclusive.
  Natural range(const Natural& lo, const Natural& hi);
  // Uniform nbits-bit value in [0, 2^nbits).
  Natural bits(std::size_t nbits);

  // Derives an independent stream; the parent advances.
  Rng split();

 private:
  Rng(std::uint64_t state, std::uint64_t gamma) : state_(state), gamma_(gamma) {}

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace workbench

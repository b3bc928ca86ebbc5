#include "workbench/rng.hpp"

#include <bit>
#include <stdexcept>

namespace workbench {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Gamma must be odd and not too regular; see the splitmix64 reference design.
std::uint64_t mix_gamma(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed), gamma_(kGoldenGamma) {}

std::uint64_t Rng::next_u64() {
  state_ += gamma_;
  return mix64(state_);
}

std::uint64_t Rng::below_u64(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng: zero bound");
  if (bound == 1) return 0;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

Natural Rng::bits(std::size_t nbits) {
  Natural out;
  std::size_t produced = 0;
  while (produced < nbits) {
    std::size_t take = nbits - produced < 64 ? nbits - produced : 64;
    std::uint64_t word = next_u64();
    if (take < 64) word >>= (64 - take);
    out <<= take;
    out += Natural(word);
    produced += take;
  }
  return out;
}

Natural Rng::below(const Natural& bound) {
  if (bound.is_zero()) throw std::invalid_argument("Rng: zero bound");
  const std::size_t k = bound.bit_length();
  for (;;) {
    Natural candidate = bits(k);
    if (candidate < bound) return candidate;
  }
}

Natural Rng::range(const Natural& lo, const Natural& hi) {
  if (hi < lo) throw std::invalid_argument("Rng: empty range");
  return lo + below(hi - lo + Natural(1));
}

Rng Rng::split() {
  const std::uint64_t seed = next_u64();
  const std::uint64_t gamma = mix_gamma(next_u64());
  return Rng(seed, gamma);
}

}  // namespace workbench

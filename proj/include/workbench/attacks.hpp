#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "workbench/natural.hpp"
#include "workbench/rng.hpp"
#include "workbench/rsa.hpp"

namespace workbench::attacks {

// Iteration counter an attack can fill in for reporting.
struct AttackStats {
  std::uint64_t work = 0;
};

// Partial quotients of num/den together with all convergents, each in
// lowest terms; the last convergent equals num/den reduced.
struct ContinuedFraction {
  std::vector<Natural> partial_quotients;
  std::vector<std::pair<Natural, Natural>> convergents;  // (numerator, denominator)
};

ContinuedFraction continued_fraction(const Natural& num, const Natural& den);

// Smallest prime factor up to `bound` (default floor(sqrt(n))) with its
// cofactor, or empty when none exists below the bound.
std::optional<std::pair<Natural, Natural>> trial_division(const Natural& n,
                                                          std::optional<Natural> bound = {},
                                                          AttackStats* stats = nullptr);

// Given a^2 = b^2 (mod n), gcd(a-b, n) when it is a nontrivial factor.
std::optional<Natural> congruence_of_squares_factor(const Natural& n, const Natural& a,
                                                    const Natural& b);

// Pollard's p-1: accumulates a^(bound!) with gcd checkpoints every 64
// steps and single-step backtracking when a checkpoint collapses to n.
std::optional<Natural> pollard_pm1(const Natural& n, const Natural& bound,
                                   AttackStats* stats = nullptr);

// Small-d key recovery by scanning convergents of e/n. Each candidate d is
// probed by re-encrypting a test message; the full private key (with the
// factors of n) is reconstructed from phi before a candidate is accepted.
// For the degenerate e = 1 the returned key carries d = 1 and p = q = 0,
// since nothing forces a factorization there.
std::optional<rsa::RsaPrivateKey> wiener_attack(const rsa::RsaPublicKey& pk,
                                                AttackStats* stats = nullptr);

// Same message encrypted under e = 3 and three pairwise-coprime moduli:
// recombine by CRT and take the exact cube root. Empty when the root is
// inexact (inconsistent ciphertexts).
std::optional<Natural> broadcast_attack_e3(const std::vector<Natural>& ciphertexts,
                                           const std::vector<Natural>& moduli);

struct ForgedSignature {
  Natural m;
  Natural sig;
};

// Builds a verifying message/signature pair out of known pairs via the
// multiplicative structure of raw RSA: m = r^e * prod m_i^{e_i} mod n.
// Only public material goes in; exponents may be negative when the
// corresponding m_i is invertible mod n.
ForgedSignature forge_signature(const rsa::RsaPublicKey& pk,
                                const std::vector<std::pair<Natural, Natural>>& known_pairs,
                                const std::vector<Integer>& exponents, const Natural& r);

// Chosen-ciphertext blinding: feed c*r^e to a raw decryption oracle and
// unblind the answer with r^-1. When r is omitted, one coprime to n is
// drawn from the rng.
Natural blinding_attack(const rsa::RsaPublicKey& pk,
                        const std::function<Natural(const Natural&)>& decrypt_oracle,
                        const Natural& c, std::optional<Natural> r, Rng& rng);

struct SuperencryptionCycle {
  std::uint64_t length;  // smallest k >= 1 with E^k(c) = c
  Natural preimage;      // E^(k-1)(c), the plaintext whose encryption is c
};

// Follows the orbit of c under repeated encryption; empty when the orbit
// does not close within max_iters steps.
std::optional<SuperencryptionCycle> superencryption_cycle(const rsa::RsaPublicKey& pk,
                                                          const Natural& c,
                                                          std::uint64_t max_iters,
                                                          AttackStats* stats = nullptr);

}  // namespace workbench::attacks

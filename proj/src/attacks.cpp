#include "workbench/attacks.hpp"

#include <stdexcept>

#include "workbench/numtheory.hpp"

namespace workbench::attacks {

namespace nt = workbench::numtheory;

ContinuedFraction continued_fraction(const Natural& num, const Natural& den) {
  if (den.is_zero()) throw std::invalid_argument("continued_fraction: zero denominator");
  ContinuedFraction out;
  Natural a = num, b = den;
  Natural h_prev = 1, h_prev2 = 0;  // numerator recurrence seeds
  Natural k_prev = 0, k_prev2 = 1;  // denominator recurrence seeds
  for (;;) {
    const Natural q = a / b;
    out.partial_quotients.push_back(q);
    const Natural h = q * h_prev + h_prev2;
    const Natural k = q * k_prev + k_prev2;
    out.convergents.emplace_back(h, k);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const Natural r = a % b;
    if (r.is_zero()) break;
    a = b;
    b = r;
  }
  return out;
}

std::optional<std::pair<Natural, Natural>> trial_division(const Natural& n,
                                                          std::optional<Natural> bound,
                                                          AttackStats* stats) {
  if (n < 2) throw std::invalid_argument("trial_division: n must be >= 2");
  const Natural limit = bound ? *bound : isqrt(n);
  std::uint64_t work = 0;
  auto check = [&](const Natural& d) -> std::optional<std::pair<Natural, Natural>> {
    ++work;
    if ((n % d).is_zero()) return std::make_pair(d, n / d);
    return std::nullopt;
  };
  std::optional<std::pair<Natural, Natural>> found;
  if (limit >= 2) {
    found = check(Natural(2));
    for (Natural d = 3; !found && d <= limit; d += 2) found = check(d);
  }
  if (stats) stats->work = work;
  return found;
}

std::optional<Natural> congruence_of_squares_factor(const Natural& n, const Natural& a,
                                                    const Natural& b) {
  if (n < 2) throw std::invalid_argument("congruence_of_squares: n must be >= 2");
  if ((a * a) % n != (b * b) % n)
    throw std::invalid_argument("congruence_of_squares: a^2 and b^2 differ mod n");
  const Natural diff = a >= b ? a - b : b - a;
  const Natural g = gcd(diff % n, n);
  if (g > 1 && g < n) return g;
  return std::nullopt;
}

std::optional<Natural> pollard_pm1(const Natural& n, const Natural& bound, AttackStats* stats) {
  if (n < 3 || n.is_even()) throw std::invalid_argument("pollard_pm1: n must be odd and >= 3");
  std::uint64_t work = 0;
  auto gcd_with_n = [&](const Natural& acc) { return gcd((acc + n - Natural(1)) % n, n); };

  const std::uint64_t limit = bound > UINT64_MAX ? UINT64_MAX : bound.to_u64();
  Natural acc = 2;
  Natural checkpoint = acc;     // accumulator value at the last clean gcd check
  std::uint64_t check_from = 2; // next exponent after that checkpoint
  for (std::uint64_t j = 2; j <= limit; ++j) {
    acc = nt::pow_mod(acc, Natural(j), n);
    ++work;
    const bool at_checkpoint = (j % 64 == 0) || j == limit;
    if (!at_checkpoint) continue;
    const Natural g = gcd_with_n(acc);
    if (g > 1 && g < n) {
      if (stats) stats->work = work;
      return g;
    }
    if (g == n) {
      // Overshot: every factor collapsed at once. Replay this stretch one
      // exponent at a time to catch the first factor alone.
      Natural replay = checkpoint;
      for (std::uint64_t i = check_from; i <= j; ++i) {
        replay = nt::pow_mod(replay, Natural(i), n);
        ++work;
        const Natural gi = gcd_with_n(replay);
        if (gi > 1 && gi < n) {
          if (stats) stats->work = work;
          return gi;
        }
        if (gi == n) break;
      }
      if (stats) stats->work = work;
      return std::nullopt;
    }
    checkpoint = acc;
    check_from = j + 1;
  }
  if (stats) stats->work = work;
  return std::nullopt;
}

namespace {

// A convergent k/d names a candidate private exponent d; accept it only if
// phi = (e*d - 1)/k is consistent and factors the modulus.
std::optional<rsa::RsaPrivateKey> reconstruct_key(const rsa::RsaPublicKey& pk, const Natural& k,
                                                  const Natural& d) {
  const Natural ed_minus_1 = pk.e * d - Natural(1);
  if (!(ed_minus_1 % k).is_zero()) return std::nullopt;
  const Natural phi = ed_minus_1 / k;
  if (phi.is_zero() || phi >= pk.n) return std::nullopt;
  // p + q = n - phi + 1; p and q are the roots of x^2 - s x + n.
  if (pk.n + Natural(1) < phi) return std::nullopt;
  const Natural s = pk.n + Natural(1) - phi;
  if (s * s < Natural(4) * pk.n) return std::nullopt;
  const auto root = nt::integer_nth_root(s * s - Natural(4) * pk.n, 2);
  if (!root.exact) return std::nullopt;
  if ((s + root.root).is_odd()) return std::nullopt;
  const Natural p = (s + root.root) >> 1;
  const Natural q = (s - root.root) >> 1;
  if (p <= 1 || q <= 1 || p * q != pk.n) return std::nullopt;
  return rsa::RsaPrivateKey{pk.n, d, p, q};
}

}  // namespace

std::optional<rsa::RsaPrivateKey> wiener_attack(const rsa::RsaPublicKey& pk, AttackStats* stats) {
  if (pk.n < 6) return std::nullopt;
  const ContinuedFraction cf = continued_fraction(pk.e, pk.n);
  std::uint64_t scanned = 0;
  const Natural probe = 2;
  const Natural probe_enc = nt::pow_mod(probe, pk.e, pk.n);
  for (const auto& [k, d] : cf.convergents) {
    ++scanned;
    if (stats) stats->work = scanned;
    if (d.is_zero()) continue;
    if (nt::pow_mod(probe_enc, d, pk.n) != probe) continue;
    if (k.is_zero()) {
      // Only e = d = 1 reaches here; nothing forces a factorization.
      if (pk.e * d == 1) return rsa::RsaPrivateKey{pk.n, d, Natural(0), Natural(0)};
      continue;
    }
    if (auto key = reconstruct_key(pk, k, d)) return key;
  }
  return std::nullopt;
}

std::optional<Natural> broadcast_attack_e3(const std::vector<Natural>& ciphertexts,
                                           const std::vector<Natural>& moduli) {
  if (ciphertexts.size() != 3 || moduli.size() != 3)
    throw std::invalid_argument("broadcast_attack_e3: need exactly three ciphertexts and moduli");
  const Natural cube = nt::crt_solve(ciphertexts, moduli);  // rejects non-coprime moduli
  const auto root = nt::integer_nth_root(cube, 3);
  if (!root.exact) return std::nullopt;
  return root.root;
}

ForgedSignature forge_signature(const rsa::RsaPublicKey& pk,
                                const std::vector<std::pair<Natural, Natural>>& known_pairs,
                                const std::vector<Integer>& exponents, const Natural& r) {
  if (known_pairs.size() != exponents.size())
    throw std::invalid_argument("forge_signature: one exponent per known pair");
  if (gcd(r % pk.n, pk.n) != 1)
    throw std::invalid_argument("forge_signature: r must be invertible mod n");
  for (const auto& [m, sig] : known_pairs)
    if (!rsa::rsa_verify(pk, m, sig))
      throw std::invalid_argument("forge_signature: known pair does not verify");

  auto power = [&](const Natural& base, const Integer& exp) {
    if (exp >= 0) return nt::pow_mod(base, Natural(exp), pk.n);
    const auto inv = nt::mod_inverse(base % pk.n, pk.n);
    if (!inv) throw std::invalid_argument("forge_signature: negative exponent on non-unit");
    return nt::pow_mod(*inv, Natural(-exp), pk.n);
  };

  ForgedSignature out;
  out.m = nt::pow_mod(r, pk.e, pk.n);
  out.sig = r % pk.n;
  for (std::size_t i = 0; i < known_pairs.size(); ++i) {
    out.m = (out.m * power(known_pairs[i].first, exponents[i])) % pk.n;
    out.sig = (out.sig * power(known_pairs[i].second, exponents[i])) % pk.n;
  }
  if (!rsa::rsa_verify(pk, out.m, out.sig))
    throw std::logic_error("forge_signature: constructed pair failed to verify");
  return out;
}

Natural blinding_attack(const rsa::RsaPublicKey& pk,
                        const std::function<Natural(const Natural&)>& decrypt_oracle,
                        const Natural& c, std::optional<Natural> r, Rng& rng) {
  Natural blind;
  if (r) {
    blind = *r % pk.n;
    if (gcd(blind, pk.n) != 1)
      throw std::invalid_argument("blinding_attack: r must be invertible mod n");
  } else {
    do {
      blind = rng.below(pk.n);
    } while (gcd(blind, pk.n) != 1);
  }
  const Natural blinded = (c * nt::pow_mod(blind, pk.e, pk.n)) % pk.n;
  const Natural answer = decrypt_oracle(blinded);
  return (answer * *nt::mod_inverse(blind, pk.n)) % pk.n;
}

std::optional<SuperencryptionCycle> superencryption_cycle(const rsa::RsaPublicKey& pk,
                                                          const Natural& c,
                                                          std::uint64_t max_iters,
                                                          AttackStats* stats) {
  if (c >= pk.n) throw std::invalid_argument("superencryption_cycle: c must be below the modulus");
  Natural prev = c;
  Natural cur = rsa::rsa_encrypt(pk, c);
  for (std::uint64_t k = 1; k <= max_iters; ++k) {
    if (stats) stats->work = k;
    if (cur == c) return SuperencryptionCycle{k, prev};
    prev = cur;
    cur = rsa::rsa_encrypt(pk, cur);
  }
  return std::nullopt;
}

}  // namespace workbench::attacks

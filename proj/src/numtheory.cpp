#include "workbench/numtheory.hpp"

#include <stdexcept>

namespace workbench::numtheory {

ExtGcdResult ext_gcd(const Natural& b0, const Natural& b1) {
  std::vector<ExtGcdRow> trace;
  return ext_gcd(b0, b1, trace);
}

ExtGcdResult ext_gcd(const Natural& b0, const Natural& b1, std::vector<ExtGcdRow>& trace) {
  if (b1.is_zero()) throw std::invalid_argument("ext_gcd: b1 must be >= 1");
  trace.clear();
  trace.push_back({b0, Integer(1), Integer(0), std::nullopt});
  trace.push_back({b1, Integer(0), Integer(1), std::nullopt});
  std::size_t i = 1;
  while (!(trace[i - 1].b % trace[i].b).is_zero()) {
    const Natural q = trace[i - 1].b / trace[i].b;
    trace[i].q = q;
    trace.push_back({trace[i - 1].b - q * trace[i].b,
                     trace[i - 1].x - Integer(q.value()) * trace[i].x,
                     trace[i - 1].y - Integer(q.value()) * trace[i].y, std::nullopt});
    ++i;
  }
  return ExtGcdResult{trace[i].b, trace[i].x, trace[i].y};
}

std::optional<Natural> mod_inverse(const Natural& e, const Natural& m) {
  if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  if (e.is_zero()) return std::nullopt;
  const ExtGcdResult r = ext_gcd(m, e);
  if (r.g != 1) return std::nullopt;
  return mod_reduce(r.y, m);
}

ModExpResult mod_exp(const Natural& base, const Natural& exponent, const Natural& modulus) {
  if (modulus < 2) throw std::invalid_argument("mod_exp: modulus must be >= 2");
  ModExpResult out;
  if (exponent.is_zero()) {
    out.value = Natural(1) % modulus;
    return out;
  }
  const std::size_t top = exponent.bit_length() - 1;
  Natural power = base % modulus;
  std::optional<Natural> acc;
  for (std::size_t i = 0; i <= top; ++i) {
    if (exponent.bit(i)) {
      if (acc) {
        acc = (*acc * power) % modulus;
        ++out.cost.multiplications;
      } else {
        acc = power;
      }
    }
    if (i < top) {
      power = (power * power) % modulus;
      ++out.cost.squarings;
    }
  }
  out.value = *acc;
  return out;
}

Natural pow_mod(const Natural& base, const Natural& exponent, const Natural& modulus) {
  return mod_exp(base, exponent, modulus).value;
}

namespace {

// One Miller-Rabin witness round; n odd, n >= 5, a in [2, n-2].
bool witness_says_composite(const Natural& a, const Natural& n, const Natural& odd_part,
                            std::size_t two_exponent) {
  Natural x = pow_mod(a, odd_part, n);
  const Natural n_minus_1 = n - Natural(1);
  if (x == 1 || x == n_minus_1) return false;
  for (std::size_t i = 1; i < two_exponent; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return false;
  }
  return true;
}

void split_even_part(const Natural& n, Natural& odd_part, std::size_t& two_exponent) {
  odd_part = n - Natural(1);
  two_exponent = 0;
  while (odd_part.is_even()) {
    odd_part >>= 1;
    ++two_exponent;
  }
}

}  // namespace

Primality miller_rabin(const Natural& n, unsigned rounds, Rng& rng) {
  if (n < 2) throw std::invalid_argument("miller_rabin: n must be >= 2");
  if (rounds == 0) throw std::invalid_argument("miller_rabin: rounds must be >= 1");
  if (n == 2 || n == 3) return Primality::probably_prime;
  if (n.is_even()) return Primality::composite;
  Natural odd_part;
  std::size_t two_exponent;
  split_even_part(n, odd_part, two_exponent);
  for (unsigned round = 0; round < rounds; ++round) {
    const Natural a = rng.range(Natural(2), n - Natural(2));
    if (witness_says_composite(a, n, odd_part, two_exponent)) return Primality::composite;
  }
  return Primality::probably_prime;
}

bool is_probable_prime(const Natural& n) {
  if (n < 2) return false;
  static const std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n == b) return true;
    if ((n % Natural(b)).is_zero()) return false;
  }
  Natural odd_part;
  std::size_t two_exponent;
  split_even_part(n, odd_part, two_exponent);
  for (std::uint64_t b : kBases)
    if (witness_says_composite(Natural(b), n, odd_part, two_exponent)) return false;
  return true;
}

Natural gen_prime(std::size_t bits, Rng& rng) {
  if (bits < 2) throw std::invalid_argument("gen_prime: need at least 2 bits");
  for (;;) {
    Natural candidate = rng.bits(bits - 1);
    candidate += Natural(1) << (bits - 1);  // exactly `bits` bits
    // Even candidates are hopeless beyond 2 bits; at 2 bits both 2 and 3
    // are prime and stay reachable.
    if (bits > 2 && candidate.is_even()) candidate += 1;
    if (miller_rabin(candidate, 40, rng) == Primality::probably_prime) return candidate;
  }
}

std::vector<std::pair<Natural, std::uint64_t>> factorize(const Natural& n) {
  if (n.is_zero()) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<std::pair<Natural, std::uint64_t>> factors;
  Natural rest = n;
  auto strip = [&](const Natural& p) {
    std::uint64_t count = 0;
    while ((rest % p).is_zero()) {
      rest /= p;
      ++count;
    }
    if (count > 0) factors.emplace_back(p, count);
  };
  strip(Natural(2));
  for (Natural p = 3; p * p <= rest; p += 2) strip(p);
  if (rest > 1) factors.emplace_back(rest, 1);
  return factors;
}

Natural euler_phi(const Natural& n) {
  if (n.is_zero()) throw std::invalid_argument("euler_phi: n must be >= 1");
  Natural phi = 1;
  for (const auto& [p, k] : factorize(n)) {
    Natural power = p - Natural(1);
    for (std::uint64_t i = 1; i < k; ++i) power *= p;
    phi *= power;
  }
  return phi;
}

Natural crt_solve(const std::vector<Natural>& residues, const std::vector<Natural>& moduli) {
  if (residues.size() != moduli.size() || moduli.empty())
    throw std::invalid_argument("crt_solve: need equally many residues and moduli, at least one");
  for (const Natural& m : moduli)
    if (m.is_zero()) throw std::invalid_argument("crt_solve: zero modulus");
  for (std::size_t i = 0; i < moduli.size(); ++i)
    for (std::size_t j = i + 1; j < moduli.size(); ++j)
      if (gcd(moduli[i], moduli[j]) != 1)
        throw std::invalid_argument("crt_solve: moduli are not pairwise coprime");

  Natural x = residues[0] % moduli[0];
  Natural combined = moduli[0];
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    const Natural& m = moduli[i];
    if (m == 1) continue;
    const Natural inv = *mod_inverse(combined % m, m);
    const Natural diff = mod_reduce(Integer(residues[i].value()) - Integer(x.value()), m);
    x += combined * ((diff * inv) % m);
    combined *= m;
  }
  return x;
}

bool is_primitive_root(const Natural& g, const Natural& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument("is_primitive_root: p must be prime");
  if (g.is_zero() || g >= p) throw std::invalid_argument("is_primitive_root: need 1 <= g < p");
  if (p == 2) return true;  // group is trivial, 1 generates it
  const Natural group_order = p - Natural(1);
  for (const auto& [q, k] : factorize(group_order))
    if (pow_mod(g, group_order / q, p) == 1) return false;
  return true;
}

Natural find_primitive_root(const Natural& p, Rng& rng) {
  if (!is_probable_prime(p)) throw std::invalid_argument("find_primitive_root: p must be prime");
  if (p == 2) return 1;
  if (p == 3) return 2;
  for (;;) {
    const Natural g = rng.range(Natural(2), p - Natural(2));
    if (is_primitive_root(g, p)) return g;
  }
}

std::optional<Natural> discrete_log_bruteforce(const Natural& g, const Natural& alpha,
                                               const Natural& p) {
  if (p < 2) throw std::invalid_argument("discrete_log_bruteforce: p must be >= 2");
  const Natural target = alpha % p;
  Natural x = Natural(1) % p;
  const Natural order_bound = p - Natural(1);
  for (Natural a = 0; a < order_bound; ++a) {
    if (x == target) return a;
    x = (x * g) % p;
  }
  if (x == target) return order_bound;
  return std::nullopt;
}

NthRootResult integer_nth_root(const Natural& x, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("integer_nth_root: n must be >= 1");
  if (n == 1 || x.is_zero()) return {x, true};

  auto pow_n = [n](const Natural& base) {
    Natural out = 1;
    for (std::uint64_t i = 0; i < n; ++i) out *= base;
    return out;
  };

  // Largest r with r^n <= x, by binary search on [0, 2^(ceil(bits/n)+1)).
  Natural lo = 0;
  Natural hi = Natural(1) << (x.bit_length() / n + 2);
  while (lo + Natural(1) < hi) {
    const Natural mid = (lo + hi) >> 1;
    if (pow_n(mid) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, pow_n(lo) == x};
}

}  // namespace workbench::numtheory

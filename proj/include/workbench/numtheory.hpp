#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "workbench/natural.hpp"
#include "workbench/rng.hpp"

namespace workbench::numtheory {

// gcd(b0, b1) together with Bezout coefficients: x*b0 + y*b1 = g.
struct ExtGcdResult {
  Natural g;
  Integer x;
  Integer y;
};

// One row of the extended-Euclid iteration; q is present only on rows where
// a division step was taken.
struct ExtGcdRow {
  Natural b;
  Integer x;
  Integer y;
  std::optional<Natural> q;
};

// Extended Euclid. Requires b1 >= 1.
ExtGcdResult ext_gcd(const Natural& b0, const Natural& b1);
// Same, recording the (b_i, x_i, y_i, q_i) iteration rows.
ExtGcdResult ext_gcd(const Natural& b0, const Natural& b1, std::vector<ExtGcdRow>& trace);

// Inverse of e modulo m (m >= 2), in [1, m); empty when gcd(e, m) != 1.
std::optional<Natural> mod_inverse(const Natural& e, const Natural& m);

// Operation counts of a square-and-multiply run. For exponent e >= 1,
// squarings = bit_length(e) - 1 and multiplications = popcount(e) - 1.
struct ExpCost {
  std::uint64_t squarings = 0;
  std::uint64_t multiplications = 0;

  friend bool operator==(const ExpCost&, const ExpCost&) = default;
};

struct ModExpResult {
  Natural value;
  ExpCost cost;
};

// base^exponent mod modulus by binary square-and-multiply; modulus >= 2.
ModExpResult mod_exp(const Natural& base, const Natural& exponent, const Natural& modulus);
// Value-only shorthand.
Natural pow_mod(const Natural& base, const Natural& exponent, const Natural& modulus);

enum class Primality { composite, probably_prime };

// Monte Carlo primality test: a composite verdict is always correct, a
// probably_prime verdict errs with probability <= 4^-rounds. Witnesses are
// drawn uniformly from [2, n-2].
Primality miller_rabin(const Natural& n, unsigned rounds, Rng& rng);

// Deterministic-base variant used for internal precondition checks; exact
// for every n below 3.3e24, which covers desk scale with room to spare.
bool is_probable_prime(const Natural& n);

// Random probable prime of exactly `bits` bits (top bit set, odd for
// bits > 2). Fresh candidate per trial, so a fixed seed fixes the output.
Natural gen_prime(std::size_t bits, Rng& rng);

// Prime factorization by trial division: (prime, exponent) pairs, ascending.
// Desk-scale n only.
std::vector<std::pair<Natural, std::uint64_t>> factorize(const Natural& n);

// Count of i in [1, n-1] coprime to n; phi(1) = 1. Factors n by trial
// division, so desk-scale n only.
Natural euler_phi(const Natural& n);

// Unique x in [0, prod(moduli)) with x = residues[i] (mod moduli[i]).
// Moduli must be pairwise coprime.
Natural crt_solve(const std::vector<Natural>& residues, const std::vector<Natural>& moduli);

// True iff g generates the multiplicative group mod the prime p.
bool is_primitive_root(const Natural& g, const Natural& p);

// Some generator of the group mod the prime p; p-1 must be within trial
// division range. Returns 1 for p = 2.
Natural find_primitive_root(const Natural& p, Rng& rng);

// Smallest a >= 0 with g^a = alpha (mod p), or empty. Exhaustive; test
// oracle for desk-scale p.
std::optional<Natural> discrete_log_bruteforce(const Natural& g, const Natural& alpha,
                                               const Natural& p);

struct NthRootResult {
  Natural root;  // floor(x^(1/n))
  bool exact;    // root^n == x
};

// Integer n-th root, n >= 1.
NthRootResult integer_nth_root(const Natural& x, std::uint64_t n);

}  // namespace workbench::numtheory

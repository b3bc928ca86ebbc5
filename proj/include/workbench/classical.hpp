#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "workbench/natural.hpp"

namespace workbench::classical {

enum class CipherDir { encrypt, decrypt };

// Text over {A..Z}, with each letter identified with its residue mod 26
// (A=0, B=1, ..., Z=25). Anything outside A-Z is rejected at parse time.
class LetterString {
 public:
  LetterString() = default;
  static LetterString parse(std::string_view text);
  static LetterString from_residues(const std::vector<std::uint8_t>& residues);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::uint8_t residue(std::size_t i) const { return static_cast<std::uint8_t>(letters_[i] - 'A'); }
  const std::string& str() const { return letters_; }

  friend bool operator==(const LetterString&, const LetterString&) = default;

 private:
  std::string letters_;
};

// Character-wise shift by key (mod 26).
LetterString caesar(std::uint8_t key, const LetterString& text, CipherDir dir);

// Position-wise shift by the key letter above each message letter; the key
// repeats cyclically. Empty key is rejected.
LetterString vigenere(const LetterString& key, const LetterString& text, CipherDir dir);

// Invertible n x n matrix over Z_26, row-major. Construction rejects
// matrices whose determinant is not a unit mod 26.
class HillKey {
 public:
  HillKey(std::size_t dimension, std::vector<std::uint8_t> entries);
  static HillKey identity(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  std::uint8_t entry(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  HillKey inverse() const;

 private:
  std::size_t dim_;
  std::vector<std::uint8_t> entries_;
};

// Block-wise matrix multiplication mod 26; decryption multiplies by the
// inverse matrix. Text length must be a multiple of the dimension (no
// padding is invented).
LetterString hill(const HillKey& key, const LetterString& text, CipherDir dir);

using Bits = std::vector<std::uint8_t>;  // entries 0/1

Bits parse_bits(std::string_view text);
std::string format_bits(const Bits& bits);

// Bitwise XOR; self-inverse. Key and data must have equal length.
Bits one_time_pad(const Bits& key, const Bits& data);

// Relative frequency of each letter as exact rationals summing to 1.
std::map<char, Rational> frequency_count(const LetterString& text);

// Explicit finite cryptosystem (P, C, K, E, D) with plaintext and key
// distributions, stored extensionally for exhaustive analysis.
struct FiniteCryptosystem {
  std::vector<std::string> plaintexts;
  std::vector<std::string> ciphertexts;
  std::vector<std::string> keys;
  std::vector<Rational> plaintext_dist;          // aligned with plaintexts
  std::vector<Rational> key_dist;                // aligned with keys
  std::vector<std::vector<std::size_t>> enc;     // enc[k][p] = ciphertext index

  std::size_t plaintext_index(std::string_view symbol) const;
  std::size_t ciphertext_index(std::string_view symbol) const;

  // Checks distribution sums, table totality, and per-key injectivity
  // (decryptability). Throws std::invalid_argument on violation.
  void validate() const;

  static FiniteCryptosystem load(std::istream& in);
  void save(std::ostream& out) const;
};

// Pr(c) under the product distribution on plaintext/key pairs.
Rational ciphertext_probability(const FiniteCryptosystem& sys, std::size_t c);

// Exact Pr(p | c) by total enumeration of (plaintext, key) pairs.
// Conditioning on Pr(c) = 0 is rejected.
Rational posterior(const FiniteCryptosystem& sys, std::size_t p, std::size_t c);

// Same value computed through the Bayes identity Pr(c|p) Pr(p) / Pr(c);
// the two routes must agree exactly.
Rational posterior_bayes(const FiniteCryptosystem& sys, std::size_t p, std::size_t c);

struct SecrecyVerdict {
  bool perfectly_secret = false;
  // First (plaintext, ciphertext) pair with Pr(p|c) != Pr(p), when not secret.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// True iff Pr(p|c) = Pr(p) for every pair with Pr(c) > 0. Requires every
// plaintext probability to be positive.
SecrecyVerdict is_perfectly_secret(const FiniteCryptosystem& sys);

struct ShannonConditions {
  bool uniform_keys = false;
  bool unique_key_per_pair = false;
};

// Evaluates both conditions of the perfect-secrecy characterization.
// Requires |C| = |K| and all plaintext probabilities positive.
ShannonConditions shannon_conditions(const FiniteCryptosystem& sys);

// One-time pad over nbits-bit strings as an explicit finite system,
// uniform keys; plaintext distribution defaults to uniform.
FiniteCryptosystem one_time_pad_system(std::size_t nbits,
                                       std::optional<std::vector<Rational>> plaintext_dist = {});

// Shift cipher over Z_modulus with uniform keys.
FiniteCryptosystem shift_cipher_system(std::size_t modulus,
                                       std::optional<std::vector<Rational>> plaintext_dist = {});

}  // namespace workbench::classical

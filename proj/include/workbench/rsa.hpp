#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "workbench/natural.hpp"
#include "workbench/rng.hpp"

namespace workbench::rsa {

struct RsaPublicKey {
  Natural n;
  Natural e;

  friend bool operator==(const RsaPublicKey&, const RsaPublicKey&) = default;
};

// Private key retains the prime factors to support CRT decryption and the
// attack demonstrations. Keys produced by keygen satisfy n = p*q with
// p != q prime and e*d = 1 (mod phi(n)); recovered keys from attacks may
// leave p and q at 0 when the factors are not reconstructible.
struct RsaPrivateKey {
  Natural n;
  Natural d;
  Natural p;
  Natural q;

  friend bool operator==(const RsaPrivateKey&, const RsaPrivateKey&) = default;
};

struct RsaKeyPair {
  RsaPublicKey pub;
  RsaPrivateKey priv;
};

// Builds a key pair from fixed primes. If e is omitted, the smallest odd
// e >= 3 coprime to phi(n) is chosen. Throws if p = q, either factor is
// not prime, or a given e is unusable.
RsaKeyPair keypair_from_primes(const Natural& p, const Natural& q,
                               std::optional<Natural> e = std::nullopt);

// Random key pair with a modulus of roughly `bits` bits. If e is given and
// gcd(e, phi) != 1, fresh primes are drawn until it fits.
RsaKeyPair rsa_keygen(std::size_t bits, std::optional<Natural> e, Rng& rng);

// m^e mod n; requires m < n.
Natural rsa_encrypt(const RsaPublicKey& pk, const Natural& m);

// c^d mod n; requires c < n.
Natural rsa_decrypt(const RsaPrivateKey& sk, const Natural& c);

// Decryption through the prime factors: m_p = c^(d mod p-1) mod p, same for
// q, recombined by the Chinese Remainder Theorem. Must agree with
// rsa_decrypt everywhere; needs p and q in the key.
Natural rsa_decrypt_crt(const RsaPrivateKey& sk, const Natural& c);

// Signature s = m^d mod n; requires m < n.
Natural rsa_sign(const RsaPrivateKey& sk, const Natural& m);

// True iff s^e = m (mod n); requires m, s < n. Note the degenerate fixed
// point: the pair m = s = 0 verifies under any key.
bool rsa_verify(const RsaPublicKey& pk, const Natural& m, const Natural& s);

// Text-to-integer chunking: base-256 big-endian blocks of
// floor((bits(n)-1)/8) bytes, so every block value is below n. Decoding
// needs the original byte length to recover a short final block exactly.
std::vector<Natural> encode_blocks(std::string_view text, const Natural& n);
std::string decode_blocks(const std::vector<Natural>& blocks, const Natural& n,
                          std::size_t text_length);

// Flat text serialization:
//   rsa-pub n=0x.. e=0x..
//   rsa-priv n=0x.. d=0x.. p=0x.. q=0x..
std::string format_public_key(const RsaPublicKey& pk);
std::string format_private_key(const RsaPrivateKey& sk);
RsaPublicKey parse_public_key(std::string_view line);
RsaPrivateKey parse_private_key(std::string_view line);

}  // namespace workbench::rsa

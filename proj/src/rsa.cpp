#include "workbench/rsa.hpp"

#include <sstream>
#include <stdexcept>

#include "workbench/numtheory.hpp"

namespace workbench::rsa {

namespace nt = workbench::numtheory;

RsaKeyPair keypair_from_primes(const Natural& p, const Natural& q, std::optional<Natural> e) {
  if (p == q) throw std::invalid_argument("rsa: primes must differ");
  if (!nt::is_probable_prime(p) || !nt::is_probable_prime(q))
    throw std::invalid_argument("rsa: factors must be prime");
  const Natural n = p * q;
  const Natural phi = (p - Natural(1)) * (q - Natural(1));
  Natural exponent;
  if (e) {
    exponent = *e;
    if (exponent <= 1 || exponent >= phi || gcd(exponent, phi) != 1)
      throw std::invalid_argument("rsa: e must satisfy 1 < e < phi(n), gcd(e, phi(n)) = 1");
  } else {
    exponent = 3;
    while (gcd(exponent, phi) != 1) exponent += 2;
    if (exponent >= phi) throw std::invalid_argument("rsa: no usable public exponent");
  }
  const Natural d = *nt::mod_inverse(exponent, phi);
  return RsaKeyPair{{n, exponent}, {n, d, p, q}};
}

RsaKeyPair rsa_keygen(std::size_t bits, std::optional<Natural> e, Rng& rng) {
  if (bits < 8) throw std::invalid_argument("rsa_keygen: need at least 8 bits");
  const std::size_t half = bits / 2;
  for (;;) {
    const Natural p = nt::gen_prime(bits - half, rng);
    Natural q = nt::gen_prime(half, rng);
    while (q == p) q = nt::gen_prime(half, rng);
    try {
      return keypair_from_primes(p, q, e);
    } catch (const std::invalid_argument&) {
      // requested e does not fit phi(n); draw fresh primes
    }
  }
}

Natural rsa_encrypt(const RsaPublicKey& pk, const Natural& m) {
  if (m >= pk.n) throw std::invalid_argument("rsa_encrypt: message must be below the modulus");
  return nt::pow_mod(m, pk.e, pk.n);
}

Natural rsa_decrypt(const RsaPrivateKey& sk, const Natural& c) {
  if (c >= sk.n) throw std::invalid_argument("rsa_decrypt: ciphertext must be below the modulus");
  return nt::pow_mod(c, sk.d, sk.n);
}

Natural rsa_decrypt_crt(const RsaPrivateKey& sk, const Natural& c) {
  if (c >= sk.n) throw std::invalid_argument("rsa_decrypt_crt: ciphertext must be below the modulus");
  if (sk.p.is_zero() || sk.q.is_zero())
    throw std::invalid_argument("rsa_decrypt_crt: key does not carry the prime factors");
  // Reducing d mod p-1 must not collapse a positive exponent to zero, or
  // multiples of p would decrypt wrongly.
  auto reduced_exponent = [&](const Natural& prime) {
    const Natural r = sk.d % (prime - Natural(1));
    return r.is_zero() && !sk.d.is_zero() ? prime - Natural(1) : r;
  };
  const Natural mp = nt::pow_mod(c % sk.p, reduced_exponent(sk.p), sk.p);
  const Natural mq = nt::pow_mod(c % sk.q, reduced_exponent(sk.q), sk.q);
  return nt::crt_solve({mp, mq}, {sk.p, sk.q});
}

Natural rsa_sign(const RsaPrivateKey& sk, const Natural& m) {
  if (m >= sk.n) throw std::invalid_argument("rsa_sign: message must be below the modulus");
  return nt::pow_mod(m, sk.d, sk.n);
}

bool rsa_verify(const RsaPublicKey& pk, const Natural& m, const Natural& s) {
  if (m >= pk.n || s >= pk.n) throw std::invalid_argument("rsa_verify: values must be below the modulus");
  return nt::pow_mod(s, pk.e, pk.n) == m;
}

std::vector<Natural> encode_blocks(std::string_view text, const Natural& n) {
  const std::size_t block_bytes = (n.bit_length() - 1) / 8;
  if (block_bytes == 0) throw std::invalid_argument("encode_blocks: modulus too small for one byte");
  std::vector<Natural> blocks;
  for (std::size_t start = 0; start < text.size(); start += block_bytes) {
    Natural value = 0;
    const std::size_t end = std::min(text.size(), start + block_bytes);
    for (std::size_t i = start; i < end; ++i) {
      value <<= 8;
      value += Natural(static_cast<unsigned char>(text[i]));
    }
    blocks.push_back(value);
  }
  return blocks;
}

std::string decode_blocks(const std::vector<Natural>& blocks, const Natural& n,
                          std::size_t text_length) {
  const std::size_t block_bytes = (n.bit_length() - 1) / 8;
  if (block_bytes == 0) throw std::invalid_argument("decode_blocks: modulus too small for one byte");
  const std::size_t expected = (text_length + block_bytes - 1) / block_bytes;
  if (blocks.size() != expected)
    throw std::invalid_argument("decode_blocks: block count does not match text length");
  std::string out;
  out.reserve(text_length);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t len = std::min(block_bytes, text_length - b * block_bytes);
    Natural value = blocks[b];
    std::string chunk(len, '\0');
    for (std::size_t i = 0; i < len; ++i) {
      chunk[len - 1 - i] = static_cast<char>((value % Natural(256)).to_u64());
      value >>= 8;
    }
    if (!value.is_zero()) throw std::invalid_argument("decode_blocks: block value too large");
    out += chunk;
  }
  return out;
}

namespace {

Natural parse_field(std::istringstream& in, std::string_view name) {
  std::string token;
  if (!(in >> token)) throw std::invalid_argument("rsa key: missing field " + std::string(name));
  const std::string prefix = std::string(name) + "=";
  if (token.rfind(prefix, 0) != 0)
    throw std::invalid_argument("rsa key: expected field " + std::string(name));
  return Natural::from_hex(token.substr(prefix.size()));
}

}  // namespace

std::string format_public_key(const RsaPublicKey& pk) {
  return "rsa-pub n=" + pk.n.to_hex() + " e=" + pk.e.to_hex();
}

std::string format_private_key(const RsaPrivateKey& sk) {
  return "rsa-priv n=" + sk.n.to_hex() + " d=" + sk.d.to_hex() + " p=" + sk.p.to_hex() +
         " q=" + sk.q.to_hex();
}

RsaPublicKey parse_public_key(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tag;
  if (!(in >> tag) || tag != "rsa-pub") throw std::invalid_argument("rsa key: expected rsa-pub");
  RsaPublicKey pk;
  pk.n = parse_field(in, "n");
  pk.e = parse_field(in, "e");
  return pk;
}

RsaPrivateKey parse_private_key(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tag;
  if (!(in >> tag) || tag != "rsa-priv") throw std::invalid_argument("rsa key: expected rsa-priv");
  RsaPrivateKey sk;
  sk.n = parse_field(in, "n");
  sk.d = parse_field(in, "d");
  sk.p = parse_field(in, "p");
  sk.q = parse_field(in, "q");
  return sk;
}

}  // namespace workbench::rsa

#pragma once

#include <optional>

#include "workbench/aowf.hpp"
#include "workbench/classical.hpp"
#include "workbench/natural.hpp"
#include "workbench/rng.hpp"
#include "workbench/transcript.hpp"

namespace workbench::protocols {

// Public group parameters: a prime p with a primitive root g.
struct DhParams {
  Natural p;
  Natural g;
};

// Validates primality of p and that g generates the group.
DhParams dh_params(const Natural& p, const Natural& g);

// Fresh parameters with p a safe prime (p = 2q+1), which makes primitive
// root checks cheap and keeps p-1 from being smooth.
DhParams make_dh_params(std::size_t bits, Rng& rng);

// --- Diffie-Hellman key agreement ---

// Pure algebra view: both partial keys and the shared key from the secrets.
struct DhAlgebra {
  Natural alpha;
  Natural beta;
  Natural key;
};
DhAlgebra dh_algebra(const DhParams& params, const Natural& a, const Natural& b);

struct DhRun {
  Transcript transcript;
  Natural alice_key;
  Natural bob_key;
};
// Message-driven run: only alpha and beta cross the channel.
DhRun dh_keyagree(const DhParams& params, const Natural& a, const Natural& b);

struct MitmRun {
  Transcript transcript;
  Natural alice_key;        // what Alice computes, from Erich's substitute
  Natural bob_key;          // what Bob computes, from Erich's substitute
  Natural erich_alice_key;  // Erich's key for the Alice-facing session
  Natural erich_bob_key;    // Erich's key for the Bob-facing session
  bool detected = false;    // the base protocol has no authentication
};
// Erich intercepts both partial keys and substitutes g^e1 toward Bob and
// g^e2 toward Alice, ending up with one working key per victim.
MitmRun dh_mitm(const DhParams& params, const Natural& a, const Natural& b, const Natural& e1,
                const Natural& e2);

// --- hybrid (predistributed) Diffie-Hellman ---

// The agreed symmetric system: the shared key's decimal digits become a
// letter key (0->A ... 9->J) for the shift-by-position cipher.
classical::LetterString key_to_letters(const Natural& key);

struct HybridDhRun {
  Transcript transcript;
  Natural alice_key;
  Natural bob_key;
  classical::LetterString ciphertext;
  classical::LetterString recovered;
};
// Bob publishes beta once; Alice responds with alpha and the encrypted
// message; Bob decrypts.
HybridDhRun hybrid_dh(const DhParams& params, const Natural& b, const Natural& a,
                      const classical::LetterString& message);

// --- ElGamal encryption and signatures ---

struct ElGamalCiphertext {
  Natural alpha;
  Natural c;
};
// Requires 1 <= m <= p-1 and a in Z*_{p-1}.
ElGamalCiphertext elgamal_encrypt(const DhParams& params, const Natural& beta, const Natural& a,
                                  const Natural& m);
// Recovers m as c * alpha^(p-1-b) mod p.
Natural elgamal_decrypt(const DhParams& params, const Natural& b, const Natural& alpha,
                        const Natural& c);

struct ElGamalRun {
  Transcript transcript;
  Natural recovered;
};
ElGamalRun elgamal_session(const DhParams& params, const Natural& b, const Natural& a,
                           const Natural& m);

struct ElGamalSignature {
  Natural beta;  // public verification value g^b
  Natural rho;   // g^r
  Natural s;     // solves b*rho + r*s = m (mod p-1)
};
// Requires gcd(r, p-1) = 1.
ElGamalSignature elgamal_sign(const DhParams& params, const Natural& b, const Natural& r,
                              const Natural& m);
// Checks g^m = beta^rho * rho^s (mod p).
bool elgamal_verify(const DhParams& params, const Natural& beta, const Natural& m,
                    const Natural& rho, const Natural& s);

// --- Shamir no-key protocol ---

struct ShamirRun {
  Transcript transcript;
  Natural recovered;
};
// Three passes m^a, m^(ab), m^b under commuting exponents; requires
// gcd(a, p-1) = gcd(b, p-1) = 1 and 1 <= m <= p. m = p collapses to 0 and
// is rejected unless allow_m_equal_p is set.
ShamirRun shamir_no_key(const Natural& p, const Natural& a, const Natural& b, const Natural& m,
                        bool allow_m_equal_p = false);

// --- Rivest-Sherman key agreement / Rabi-Sherman signatures ---

struct RivestShermanRun {
  Transcript transcript;
  Natural alice_key;
  Natural bob_key;
  bool agreed = false;  // false flags a non-associative sigma
};
// Carries y, sigma(x,y), sigma(y,z) over the channel; aborts if sigma is
// undefined on a pair it must evaluate.
RivestShermanRun rivest_sherman_keyagree(const aowf::PartialFn& sigma, const Natural& x,
                                         const Natural& y, const Natural& z);

struct RabiShermanPublic {
  Natural y;         // second component of the signer's pair
  Natural sigma_xy;  // sigma(x, y), published with y
};
struct RabiShermanSigned {
  Transcript transcript;
  RabiShermanPublic pub;
  Natural signature;  // sigma(m, x)
};
RabiShermanSigned rabi_sherman_sign(const aowf::PartialFn& sigma, const Natural& x,
                                    const Natural& y, const Natural& m);
// Accepts iff sigma(m, sigma(x,y)) = sigma(sig, y); aborts on undefined
// applications.
bool rabi_sherman_verify(const aowf::PartialFn& sigma, const RabiShermanPublic& pub,
                         const Natural& m, const Natural& signature);

}  // namespace workbench::protocols

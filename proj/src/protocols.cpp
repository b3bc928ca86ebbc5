#include "workbench/protocols.hpp"

#include <stdexcept>

#include "workbench/errors.hpp"
#include "workbench/numtheory.hpp"

namespace workbench::protocols {

namespace nt = workbench::numtheory;
using nlohmann::json;

namespace {

void require_exponent_range(const DhParams& params, const Natural& e, const char* who) {
  if (e.is_zero() || e > params.p - Natural(2))
    throw std::invalid_argument(std::string(who) + ": exponent must lie in [1, p-2]");
}

json dh_parameter_block(const DhParams& params) {
  json j;
  j["p"] = json_natural(params.p);
  j["g"] = json_natural(params.g);
  return j;
}

Natural sigma_or_abort(const aowf::PartialFn& sigma, const Natural& a, const Natural& b,
                       const char* where) {
  const auto v = sigma(a, b);
  if (!v)
    throw ProtocolAbortError(std::string(where) + ": sigma undefined on an encountered pair");
  return *v;
}

}  // namespace

DhParams dh_params(const Natural& p, const Natural& g) {
  if (!nt::is_primitive_root(g, p))  // also rejects non-prime p
    throw std::invalid_argument("dh_params: g is not a primitive root of p");
  return DhParams{p, g};
}

DhParams make_dh_params(std::size_t bits, Rng& rng) {
  if (bits < 4) throw std::invalid_argument("make_dh_params: need at least 4 bits");
  for (;;) {
    const Natural q = nt::gen_prime(bits - 1, rng);
    const Natural p = Natural(2) * q + Natural(1);
    if (!nt::is_probable_prime(p)) continue;
    const Natural g = nt::find_primitive_root(p, rng);
    return DhParams{p, g};
  }
}

DhAlgebra dh_algebra(const DhParams& params, const Natural& a, const Natural& b) {
  require_exponent_range(params, a, "dh");
  require_exponent_range(params, b, "dh");
  DhAlgebra out;
  out.alpha = nt::pow_mod(params.g, a, params.p);
  out.beta = nt::pow_mod(params.g, b, params.p);
  out.key = nt::pow_mod(params.g, a * b, params.p);
  return out;
}

namespace {

// A key-agreement endpoint: keeps its exponent private, surrenders only
// group elements.
class DhParty {
 public:
  DhParty(const DhParams& params, Natural secret) : params_(params), secret_(std::move(secret)) {
    require_exponent_range(params_, secret_, "dh");
  }

  Natural partial_key() const { return nt::pow_mod(params_.g, secret_, params_.p); }
  Natural session_key(const Natural& received) const {
    return nt::pow_mod(received, secret_, params_.p);
  }

 private:
  DhParams params_;
  Natural secret_;
};

}  // namespace

DhRun dh_keyagree(const DhParams& params, const Natural& a, const Natural& b) {
  const DhParty alice(params, a);
  const DhParty bob(params, b);

  DhRun run;
  run.transcript.protocol = "diffie-hellman";
  run.transcript.parameters = dh_parameter_block(params);
  const Natural alpha = alice.partial_key();
  const Natural beta = bob.partial_key();
  run.transcript.send(1, PartyId::alice, "alpha", json_natural(alpha));
  run.transcript.send(1, PartyId::bob, "beta", json_natural(beta));

  run.alice_key = alice.session_key(beta);
  run.bob_key = bob.session_key(alpha);
  run.transcript.outputs["alice"] = json{{"key", json_natural(run.alice_key)}};
  run.transcript.outputs["bob"] = json{{"key", json_natural(run.bob_key)}};
  return run;
}

MitmRun dh_mitm(const DhParams& params, const Natural& a, const Natural& b, const Natural& e1,
                const Natural& e2) {
  const DhParty alice(params, a);
  const DhParty bob(params, b);
  require_exponent_range(params, e1, "dh_mitm");
  require_exponent_range(params, e2, "dh_mitm");

  MitmRun run;
  run.transcript.protocol = "diffie-hellman-mitm";
  run.transcript.parameters = dh_parameter_block(params);

  const Natural alpha = alice.partial_key();
  const Natural beta = bob.partial_key();
  const Natural alpha_sub = nt::pow_mod(params.g, e1, params.p);  // delivered to Bob
  const Natural beta_sub = nt::pow_mod(params.g, e2, params.p);   // delivered to Alice
  run.transcript.send(1, PartyId::alice, "alpha", json_natural(alpha));
  run.transcript.send(1, PartyId::erich, "alpha_substituted", json_natural(alpha_sub));
  run.transcript.send(2, PartyId::bob, "beta", json_natural(beta));
  run.transcript.send(2, PartyId::erich, "beta_substituted", json_natural(beta_sub));

  run.alice_key = alice.session_key(beta_sub);
  run.bob_key = bob.session_key(alpha_sub);
  // Erich raises the intercepted partial keys to his own exponents.
  run.erich_alice_key = nt::pow_mod(alpha, e2, params.p);
  run.erich_bob_key = nt::pow_mod(beta, e1, params.p);
  run.detected = false;

  run.transcript.outputs["alice"] = json{{"key", json_natural(run.alice_key)}};
  run.transcript.outputs["bob"] = json{{"key", json_natural(run.bob_key)}};
  run.transcript.outputs["erich"] = json{{"alice_session", json_natural(run.erich_alice_key)},
                                         {"bob_session", json_natural(run.erich_bob_key)}};
  return run;
}

classical::LetterString key_to_letters(const Natural& key) {
  std::vector<std::uint8_t> residues;
  for (char digit : key.to_dec()) residues.push_back(static_cast<std::uint8_t>(digit - '0'));
  return classical::LetterString::from_residues(residues);
}

HybridDhRun hybrid_dh(const DhParams& params, const Natural& b, const Natural& a,
                      const classical::LetterString& message) {
  const DhParty alice(params, a);
  const DhParty bob(params, b);

  HybridDhRun run;
  run.transcript.protocol = "hybrid-diffie-hellman";
  run.transcript.parameters = dh_parameter_block(params);

  const Natural beta = bob.partial_key();
  run.transcript.send(1, PartyId::bob, "beta", json_natural(beta));

  run.alice_key = alice.session_key(beta);
  const Natural alpha = alice.partial_key();
  run.ciphertext = classical::vigenere(key_to_letters(run.alice_key), message,
                                       classical::CipherDir::encrypt);
  run.transcript.send(2, PartyId::alice, "alpha", json_natural(alpha));
  run.transcript.send(2, PartyId::alice, "c", run.ciphertext.str());

  run.bob_key = bob.session_key(alpha);
  run.recovered = classical::vigenere(key_to_letters(run.bob_key), run.ciphertext,
                                      classical::CipherDir::decrypt);
  run.transcript.outputs["bob"] = json{{"message", run.recovered.str()}};
  return run;
}

ElGamalCiphertext elgamal_encrypt(const DhParams& params, const Natural& beta, const Natural& a,
                                  const Natural& m) {
  if (m.is_zero() || m >= params.p)
    throw std::invalid_argument("elgamal_encrypt: message must lie in [1, p-1]");
  require_exponent_range(params, a, "elgamal_encrypt");
  if (gcd(a, params.p - Natural(1)) != 1)
    throw std::invalid_argument("elgamal_encrypt: a must be a unit mod p-1");
  ElGamalCiphertext out;
  out.alpha = nt::pow_mod(params.g, a, params.p);
  out.c = (m * nt::pow_mod(beta, a, params.p)) % params.p;
  return out;
}

Natural elgamal_decrypt(const DhParams& params, const Natural& b, const Natural& alpha,
                        const Natural& c) {
  require_exponent_range(params, b, "elgamal_decrypt");
  const Natural x = params.p - Natural(1) - b;
  return (c * nt::pow_mod(alpha, x, params.p)) % params.p;
}

ElGamalRun elgamal_session(const DhParams& params, const Natural& b, const Natural& a,
                           const Natural& m) {
  ElGamalRun run;
  run.transcript.protocol = "elgamal";
  run.transcript.parameters = dh_parameter_block(params);
  const Natural beta = nt::pow_mod(params.g, b, params.p);
  run.transcript.send(1, PartyId::bob, "beta", json_natural(beta));
  const ElGamalCiphertext ct = elgamal_encrypt(params, beta, a, m);
  run.transcript.send(2, PartyId::alice, "alpha", json_natural(ct.alpha));
  run.transcript.send(2, PartyId::alice, "c", json_natural(ct.c));
  run.recovered = elgamal_decrypt(params, b, ct.alpha, ct.c);
  run.transcript.outputs["bob"] = json{{"message", json_natural(run.recovered)}};
  return run;
}

ElGamalSignature elgamal_sign(const DhParams& params, const Natural& b, const Natural& r,
                              const Natural& m) {
  require_exponent_range(params, b, "elgamal_sign");
  const Natural group_order = params.p - Natural(1);
  const auto r_inv = nt::mod_inverse(r % group_order, group_order);
  if (!r_inv) throw std::invalid_argument("elgamal_sign: r must be a unit mod p-1");

  ElGamalSignature sig;
  sig.beta = nt::pow_mod(params.g, b, params.p);
  sig.rho = nt::pow_mod(params.g, r, params.p);
  // Solve b*rho + r*s = m (mod p-1) for s.
  const Integer diff = Integer(m.value()) - Integer((b * sig.rho).value());
  sig.s = (mod_reduce(diff, group_order) * *r_inv) % group_order;
  return sig;
}

bool elgamal_verify(const DhParams& params, const Natural& beta, const Natural& m,
                    const Natural& rho, const Natural& s) {
  if (rho.is_zero() || rho >= params.p)
    throw std::invalid_argument("elgamal_verify: rho must lie in [1, p-1]");
  const Natural lhs = nt::pow_mod(params.g, m, params.p);
  const Natural rhs =
      (nt::pow_mod(beta, rho, params.p) * nt::pow_mod(rho, s, params.p)) % params.p;
  return lhs == rhs;
}

ShamirRun shamir_no_key(const Natural& p, const Natural& a, const Natural& b, const Natural& m,
                        bool allow_m_equal_p) {
  if (!nt::is_probable_prime(p)) throw std::invalid_argument("shamir_no_key: p must be prime");
  const Natural group_order = p - Natural(1);
  const auto a_inv = nt::mod_inverse(a % group_order, group_order);
  const auto b_inv = nt::mod_inverse(b % group_order, group_order);
  if (!a_inv || !b_inv)
    throw std::invalid_argument("shamir_no_key: exponents must be units mod p-1");
  if (m.is_zero() || m > p) throw std::invalid_argument("shamir_no_key: message must lie in [1, p]");
  if (m == p && !allow_m_equal_p)
    throw std::invalid_argument("shamir_no_key: m = p collapses to 0; pass the override to allow");

  ShamirRun run;
  run.transcript.protocol = "shamir-no-key";
  run.transcript.parameters = json{{"p", json_natural(p)}};

  const Natural x = nt::pow_mod(m, a, p);
  run.transcript.send(1, PartyId::alice, "x", json_natural(x));
  const Natural y = nt::pow_mod(x, b, p);
  run.transcript.send(2, PartyId::bob, "y", json_natural(y));
  const Natural z = nt::pow_mod(y, *a_inv, p);
  run.transcript.send(3, PartyId::alice, "z", json_natural(z));
  run.recovered = nt::pow_mod(z, *b_inv, p);
  run.transcript.outputs["bob"] = json{{"message", json_natural(run.recovered)}};
  return run;
}

RivestShermanRun rivest_sherman_keyagree(const aowf::PartialFn& sigma, const Natural& x,
                                         const Natural& y, const Natural& z) {
  RivestShermanRun run;
  run.transcript.protocol = "rivest-sherman";

  const Natural sigma_xy = sigma_or_abort(sigma, x, y, "rivest_sherman");
  run.transcript.send(1, PartyId::alice, "y", json_natural(y));
  run.transcript.send(1, PartyId::alice, "sigma_xy", json_natural(sigma_xy));
  const Natural sigma_yz = sigma_or_abort(sigma, y, z, "rivest_sherman");
  run.transcript.send(2, PartyId::bob, "sigma_yz", json_natural(sigma_yz));

  run.alice_key = sigma_or_abort(sigma, x, sigma_yz, "rivest_sherman");
  run.bob_key = sigma_or_abort(sigma, sigma_xy, z, "rivest_sherman");
  run.agreed = run.alice_key == run.bob_key;
  run.transcript.outputs["alice"] = json{{"key", json_natural(run.alice_key)}};
  run.transcript.outputs["bob"] = json{{"key", json_natural(run.bob_key)}};
  return run;
}

RabiShermanSigned rabi_sherman_sign(const aowf::PartialFn& sigma, const Natural& x,
                                    const Natural& y, const Natural& m) {
  RabiShermanSigned out;
  out.transcript.protocol = "rabi-sherman";
  out.pub.y = y;
  out.pub.sigma_xy = sigma_or_abort(sigma, x, y, "rabi_sherman_sign");
  out.transcript.send(1, PartyId::alice, "y", json_natural(out.pub.y));
  out.transcript.send(1, PartyId::alice, "sigma_xy", json_natural(out.pub.sigma_xy));
  out.signature = sigma_or_abort(sigma, m, x, "rabi_sherman_sign");
  out.transcript.send(2, PartyId::alice, "m", json_natural(m));
  out.transcript.send(2, PartyId::alice, "signature", json_natural(out.signature));
  return out;
}

bool rabi_sherman_verify(const aowf::PartialFn& sigma, const RabiShermanPublic& pub,
                         const Natural& m, const Natural& signature) {
  const Natural lhs = sigma_or_abort(sigma, m, pub.sigma_xy, "rabi_sherman_verify");
  const Natural rhs = sigma_or_abort(sigma, signature, pub.y, "rabi_sherman_verify");
  return lhs == rhs;
}

}  // namespace workbench::protocols

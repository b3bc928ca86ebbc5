#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "workbench/aowf.hpp"
#include "workbench/errors.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/protocols.hpp"

using namespace workbench;
using namespace workbench::protocols;
namespace nt = workbench::numtheory;
namespace ao = workbench::aowf;

namespace {

Natural pow_mod_iterated(const Natural& base, std::uint64_t exponent, const Natural& modulus) {
  Natural acc = Natural(1) % modulus;
  for (std::uint64_t i = 0; i < exponent; ++i) acc = (acc * base) % modulus;
  return acc;
}

Natural draw_unit_exponent(const DhParams& params, Rng& rng) {
  const Natural order = params.p - Natural(1);
  for (;;) {
    const Natural a = rng.range(Natural(1), params.p - Natural(2));
    if (gcd(a, order) == 1) return a;
  }
}

const ao::PartialFn kAddPartial = ao::as_partial(
    [](const Natural& a, const Natural& b) { return a + b; });

}  // namespace

TEST_CASE("dh_params validation and safe-prime generation") {
  CHECK_THROWS_AS(dh_params(Natural(5), Natural(4)), std::invalid_argument);
  CHECK_THROWS_AS(dh_params(Natural(9), Natural(2)), std::invalid_argument);
  const DhParams p5 = dh_params(Natural(5), Natural(2));
  CHECK(p5.p == 5);

  Rng rng(64);
  const DhParams fresh = make_dh_params(24, rng);
  CHECK(nt::is_probable_prime(fresh.p));
  CHECK(nt::is_probable_prime((fresh.p - Natural(1)) / 2));
  CHECK(nt::is_primitive_root(fresh.g, fresh.p));
}

TEST_CASE("dh_keyagree: trivial exponents, worked small group, property run") {
  const DhParams params = dh_params(Natural(5), Natural(2));

  const DhRun ones = dh_keyagree(params, Natural(1), Natural(1));
  CHECK(ones.alice_key == params.g);
  CHECK(ones.bob_key == params.g);

  const DhRun run = dh_keyagree(params, Natural(3), Natural(2));
  CHECK(run.alice_key == run.bob_key);
  // Brute-force discrete-log oracle: recover both exponents off the wire
  // and recompute the shared key directly.
  const Natural alpha = natural_from_json(run.transcript.messages[0].payload);
  const Natural beta = natural_from_json(run.transcript.messages[1].payload);
  const auto a = nt::discrete_log_bruteforce(params.g, alpha, params.p);
  const auto b = nt::discrete_log_bruteforce(params.g, beta, params.p);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(*a == 3);
  CHECK(*b == 2);
  CHECK(run.alice_key == pow_mod_iterated(params.g, (*a * *b).to_u64(), params.p));

  Rng rng(9);
  const DhParams p23 = dh_params(Natural(23), nt::find_primitive_root(Natural(23), rng));
  for (int i = 0; i < 100; ++i) {
    const Natural x = rng.range(Natural(1), Natural(21));
    const Natural y = rng.range(Natural(1), Natural(21));
    const DhRun r = dh_keyagree(p23, x, y);
    CHECK(r.alice_key == r.bob_key);
    const DhAlgebra alg = dh_algebra(p23, x, y);
    CHECK(r.alice_key == alg.key);
  }

  CHECK_THROWS_AS(dh_keyagree(params, Natural(0), Natural(1)), std::invalid_argument);
  CHECK_THROWS_AS(dh_keyagree(params, Natural(1), Natural(4)), std::invalid_argument);
}

TEST_CASE("dh_mitm: unit exponents, session-key structure, exhaustive small group") {
  const DhParams params = dh_params(Natural(11), Natural(2));

  const MitmRun unit = dh_mitm(params, Natural(4), Natural(7), Natural(1), Natural(1));
  CHECK(unit.erich_alice_key == nt::pow_mod(params.g, Natural(4), params.p));
  CHECK(unit.erich_bob_key == nt::pow_mod(params.g, Natural(7), params.p));
  CHECK(!unit.detected);

  // Exhaustive sweep: the attack always works, and the relation to the
  // honest key is pinned down algebraically.
  const Natural order = params.p - Natural(1);
  for (std::uint64_t a = 1; a <= 9; ++a)
    for (std::uint64_t b = 1; b <= 9; ++b)
      for (std::uint64_t e1 = 1; e1 <= 9; ++e1)
        for (std::uint64_t e2 = 1; e2 <= 9; ++e2) {
          const MitmRun r = dh_mitm(params, Natural(a), Natural(b), Natural(e1), Natural(e2));
          CHECK(r.alice_key == r.erich_alice_key);
          CHECK(r.bob_key == r.erich_bob_key);
          const Natural honest = dh_algebra(params, Natural(a), Natural(b)).key;
          const bool alice_matches_honest = (a * e2) % 10 == (a * b) % 10;
          const bool bob_matches_honest = (b * e1) % 10 == (a * b) % 10;
          CHECK((r.alice_key == honest) == alice_matches_honest);
          CHECK((r.bob_key == honest) == bob_matches_honest);
        }
}

TEST_CASE("hybrid_dh: round trip, minimal message, tampering") {
  Rng rng(3);
  const DhParams params = make_dh_params(24, rng);
  const Natural b = rng.range(Natural(1), params.p - Natural(2));
  const Natural a = rng.range(Natural(1), params.p - Natural(2));

  const auto msg = classical::LetterString::parse("MEETATNOON");
  const HybridDhRun run = hybrid_dh(params, b, a, msg);
  CHECK(run.alice_key == run.bob_key);
  CHECK(run.recovered == msg);

  const HybridDhRun tiny = hybrid_dh(params, b, a, classical::LetterString::parse("A"));
  CHECK(tiny.recovered == classical::LetterString::parse("A"));

  // Flip one ciphertext letter: the decryption changes in that position.
  std::vector<std::uint8_t> tampered;
  for (std::size_t i = 0; i < run.ciphertext.size(); ++i) tampered.push_back(run.ciphertext.residue(i));
  tampered[0] = static_cast<std::uint8_t>((tampered[0] + 1) % 26);
  const auto garbled = classical::vigenere(key_to_letters(run.bob_key),
                                           classical::LetterString::from_residues(tampered),
                                           classical::CipherDir::decrypt);
  CHECK(garbled != msg);

  // Key-to-letters mapping: decimal digits land in A..J.
  const auto letters = key_to_letters(Natural(9041));
  CHECK(letters.str() == "JAEB");
}

TEST_CASE("elgamal: worked instance and property runs") {
  const DhParams params = dh_params(Natural(23), Natural(5));

  // b=6, a=3, m=10: beta = 5^6 = 8, alpha = 5^3 = 10, c = 10 * 8^3 = 14.
  const Natural beta = pow_mod_iterated(Natural(5), 6, Natural(23));
  CHECK(beta == 8);
  const ElGamalCiphertext ct = elgamal_encrypt(params, beta, Natural(3), Natural(10));
  CHECK(ct.alpha == pow_mod_iterated(Natural(5), 3, Natural(23)));
  CHECK(ct.c == (Natural(10) * pow_mod_iterated(beta, 3, Natural(23))) % Natural(23));
  CHECK(elgamal_decrypt(params, Natural(6), ct.alpha, ct.c) == 10);

  // m = 1 hides nothing but the mask: c = beta^a.
  const ElGamalCiphertext unit = elgamal_encrypt(params, beta, Natural(3), Natural(1));
  CHECK(unit.c == pow_mod_iterated(beta, 3, Natural(23)));

  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const Natural b = rng.range(Natural(1), Natural(21));
    const Natural a = draw_unit_exponent(params, rng);
    const Natural m = rng.range(Natural(1), Natural(22));
    const ElGamalRun run = elgamal_session(params, b, a, m);
    CHECK(run.recovered == m);
  }

  CHECK_THROWS_AS(elgamal_encrypt(params, beta, Natural(3), Natural(0)), std::invalid_argument);
  CHECK_THROWS_AS(elgamal_encrypt(params, beta, Natural(3), Natural(23)), std::invalid_argument);
  CHECK_THROWS_AS(elgamal_encrypt(params, beta, Natural(2), Natural(10)), std::invalid_argument);
}

TEST_CASE("elgamal signatures: random validity, s = 0 edge, tampering") {
  Rng rng(29);
  const DhParams params = make_dh_params(20, rng);
  const Natural order = params.p - Natural(1);

  for (int i = 0; i < 100; ++i) {
    const Natural b = rng.range(Natural(1), params.p - Natural(2));
    const Natural r = draw_unit_exponent(params, rng);
    const Natural m = rng.below(order * Natural(2));
    const ElGamalSignature sig = elgamal_sign(params, b, r, m);
    CHECK(elgamal_verify(params, sig.beta, m, sig.rho, sig.s));
    const Natural tampered = m + Natural(1);
    CHECK(!elgamal_verify(params, sig.beta, tampered, sig.rho, sig.s));
  }

  // Force s = 0 by signing m = b * rho mod (p-1); verification still holds.
  const Natural b = rng.range(Natural(1), params.p - Natural(2));
  const Natural r = draw_unit_exponent(params, rng);
  const Natural rho = nt::pow_mod(params.g, r, params.p);
  const Natural m0 = (b * rho) % order;
  const ElGamalSignature zero = elgamal_sign(params, b, r, m0);
  CHECK(zero.s == 0);
  CHECK(elgamal_verify(params, zero.beta, m0, zero.rho, zero.s));

  CHECK_THROWS_AS(elgamal_sign(params, b, order, Natural(5)), std::invalid_argument);
}

TEST_CASE("shamir_no_key: degenerate, worked, property, edge") {
  // a = 1 exposes m on the channel in the first pass.
  const ShamirRun open = shamir_no_key(Natural(23), Natural(1), Natural(7), Natural(19));
  CHECK(natural_from_json(open.transcript.messages[0].payload) == 19);
  CHECK(open.recovered == 19);

  const ShamirRun worked = shamir_no_key(Natural(23), Natural(5), Natural(7), Natural(19));
  CHECK(worked.recovered == 19);
  // Independent check of the three wire values.
  CHECK(natural_from_json(worked.transcript.messages[0].payload) ==
        pow_mod_iterated(Natural(19), 5, Natural(23)));

  Rng rng(31);
  const Natural p = nt::gen_prime(20, rng);
  for (int i = 0; i < 100; ++i) {
    Natural a, b;
    do {
      a = rng.range(Natural(1), p - Natural(2));
    } while (gcd(a, p - Natural(1)) != 1);
    do {
      b = rng.range(Natural(1), p - Natural(2));
    } while (gcd(b, p - Natural(1)) != 1);
    const Natural m = rng.range(Natural(1), p - Natural(1));
    CHECK(shamir_no_key(p, a, b, m).recovered == m);
  }

  CHECK_THROWS_AS(shamir_no_key(Natural(23), Natural(11), Natural(7), Natural(19)),
                  std::invalid_argument);
  CHECK_THROWS_AS(shamir_no_key(Natural(23), Natural(5), Natural(7), Natural(23)),
                  std::invalid_argument);
  CHECK(shamir_no_key(Natural(23), Natural(5), Natural(7), Natural(23), true).recovered == 0);
}

TEST_CASE("rivest_sherman: associative baseline, certificate sigma, subtraction witness") {
  const RivestShermanRun add =
      rivest_sherman_keyagree(kAddPartial, Natural(4), Natural(9), Natural(2));
  CHECK(add.agreed);
  CHECK(add.alice_key == 15);
  CHECK(add.bob_key == 15);

  const auto k3 = graphs::Graph::complete(3);
  const Natural x_inst = ao::encode_graph(k3);
  const auto colorings = graphs::enumerate_3colorings(k3);
  const Natural e0 = ao::pair(x_inst, ao::encode_certificate(x_inst, colorings[0]));
  const Natural e1 = ao::pair(x_inst, ao::encode_certificate(x_inst, colorings[1]));
  const Natural e2 = ao::pair(x_inst, ao::encode_certificate(x_inst, colorings[2]));

  const RivestShermanRun cert = rivest_sherman_keyagree(ao::sigma_cert, e0, e1, e2);
  CHECK(cert.agreed);

  const ao::PartialFn totalized = ao::as_partial(ao::totalize(ao::sigma_cert));
  const RivestShermanRun total_run = rivest_sherman_keyagree(totalized, e0, e1, e2);
  CHECK(total_run.agreed);

  // Subtraction with floor at zero is not associative; a witness triple
  // makes the two keys differ and flags the run.
  const ao::PartialFn sub = ao::as_partial(
      [](const Natural& a, const Natural& b) { return a >= b ? a - b : Natural(0); });
  bool found_witness = false;
  for (std::uint64_t x = 0; x < 8 && !found_witness; ++x)
    for (std::uint64_t y = 0; y < 8 && !found_witness; ++y)
      for (std::uint64_t z = 0; z < 8 && !found_witness; ++z) {
        const RivestShermanRun r =
            rivest_sherman_keyagree(sub, Natural(x), Natural(y), Natural(z));
        if (!r.agreed) found_witness = true;
      }
  CHECK(found_witness);

  // Partial sigma undefined mid-run aborts the protocol.
  CHECK_THROWS_AS(rivest_sherman_keyagree(ao::sigma_cert, Natural(1), Natural(2), Natural(3)),
                  ProtocolAbortError);
}

TEST_CASE("rabi_sherman: addition baseline, certificate sigma, forged signature") {
  const RabiShermanSigned s =
      rabi_sherman_sign(kAddPartial, Natural(11), Natural(5), Natural(40));
  CHECK(s.signature == 51);
  CHECK(rabi_sherman_verify(kAddPartial, s.pub, Natural(40), s.signature));
  CHECK(!rabi_sherman_verify(kAddPartial, s.pub, Natural(40), s.signature + Natural(1)));

  const auto k3 = graphs::Graph::complete(3);
  const Natural x_inst = ao::encode_graph(k3);
  const auto colorings = graphs::enumerate_3colorings(k3);
  const Natural xa = ao::pair(x_inst, ao::encode_certificate(x_inst, colorings[4]));
  const Natural ya = ao::pair(x_inst, ao::encode_certificate(x_inst, colorings[2]));
  const Natural m = ao::pair(x_inst, ao::encode_certificate(x_inst, colorings[1]));

  const RabiShermanSigned cert_sig = rabi_sherman_sign(ao::sigma_cert, xa, ya, m);
  CHECK(rabi_sherman_verify(ao::sigma_cert, cert_sig.pub, m, cert_sig.signature));

  CHECK_THROWS_AS(rabi_sherman_sign(ao::sigma_cert, Natural(1), Natural(2), Natural(3)),
                  ProtocolAbortError);
}

TEST_CASE("transcripts: serialization round trip and hygiene") {
  Rng rng(1007);
  const DhParams params = make_dh_params(48, rng);
  const Natural a = rng.range(Natural(1) << 40, params.p - Natural(2));
  const Natural b = rng.range(Natural(1) << 40, params.p - Natural(2));

  const DhRun run = dh_keyagree(params, a, b);
  const std::string wire = run.transcript.to_jsonl();

  // Private exponents never appear in the serialized transcript.
  CHECK(wire.find(a.to_hex()) == std::string::npos);
  CHECK(wire.find(b.to_hex()) == std::string::npos);

  std::istringstream in(wire);
  const Transcript back = Transcript::from_jsonl(in);
  CHECK(back == run.transcript);

  const Natural e1 = rng.range(Natural(1) << 40, params.p - Natural(2));
  const Natural e2 = rng.range(Natural(1) << 40, params.p - Natural(2));
  const MitmRun mitm = dh_mitm(params, a, b, e1, e2);
  const std::string mitm_wire = mitm.transcript.to_jsonl();
  for (const Natural& secret : {a, b, e1, e2})
    CHECK(mitm_wire.find(secret.to_hex()) == std::string::npos);

  const ShamirRun sh = shamir_no_key(Natural(99991), Natural(7), Natural(13), Natural(31337));
  CHECK(sh.recovered == 31337);
  const std::string sh_wire = sh.transcript.to_jsonl();
  CHECK(sh_wire.find("\"" + Natural(7).to_hex() + "\"") == std::string::npos);
  CHECK(sh_wire.find("\"" + Natural(13).to_hex() + "\"") == std::string::npos);

  Transcript bad;
  bad.protocol = "x";
  bad.send(2, PartyId::alice, "m", "0x1");
  CHECK_THROWS_AS(bad.send(1, PartyId::bob, "m", "0x1"), std::invalid_argument);

  std::istringstream noheader("");
  CHECK_THROWS_AS(Transcript::from_jsonl(noheader), ParseError);
  std::istringstream garbage("{\"protocol\": \"x\"}\nnot json\n");
  CHECK_THROWS_AS(Transcript::from_jsonl(garbage), ParseError);

  // Header-only transcripts are valid and round trip.
  Transcript header_only;
  header_only.protocol = "empty-demo";
  header_only.seed = 5;
  std::istringstream hin(header_only.to_jsonl());
  const Transcript header_back = Transcript::from_jsonl(hin);
  CHECK(header_back == header_only);
  CHECK(header_back.messages.empty());

  // The bundled golden transcript parses and is internally consistent.
  const Transcript golden =
      read_transcript(std::string(WORKBENCH_FIXTURE_DIR) + "/dh_demo.transcript");
  CHECK(golden.protocol == "diffie-hellman");
  REQUIRE(golden.messages.size() == 2);
  CHECK(golden.messages[0].label == "alpha");
  CHECK(golden.messages[1].label == "beta");
  CHECK(golden.outputs.at("alice") == golden.outputs.at("bob"));
  CHECK(golden.seed.has_value());
}

// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one pass/fail line. The process exits nonzero if any criterion
// fails. An optional argument selects a single criterion by number.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "attack_helpers.hpp"
#include "system_family.hpp"
#include "workbench/aowf.hpp"
#include "workbench/attacks.hpp"
#include "workbench/classical.hpp"
#include "workbench/graphs.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/protocols.hpp"
#include "workbench/rng.hpp"
#include "workbench/rsa.hpp"
#include "workbench/zkp.hpp"

using namespace workbench;
namespace nt = workbench::numtheory;
namespace cls = workbench::classical;
namespace atk = workbench::attacks;
namespace proto = workbench::protocols;
namespace ao = workbench::aowf;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!detail.str().empty()) detail << "; ";
      detail << what;
    }
  }
};

// --- criterion 1: the worked RSA key, exhaustively correct ---

bool criterion_rsa_golden(Check& c) {
  const rsa::RsaKeyPair kp = rsa::keypair_from_primes(Natural(11), Natural(23), Natural(3));
  c.expect(kp.pub.n == 253, "n != 253");
  c.expect((kp.priv.p - Natural(1)) * (kp.priv.q - Natural(1)) == 220, "phi != 220");
  c.expect(kp.priv.d == 147, "d != 147");
  for (std::uint64_t m = 0; m < 253; ++m) {
    if (rsa::rsa_decrypt(kp.priv, rsa::rsa_encrypt(kp.pub, Natural(m))) != m) {
      c.expect(false, "round trip failed at m=" + std::to_string(m));
      break;
    }
  }
  return c.ok;
}

// --- criterion 2: extended Euclid trace ---

bool criterion_euclid_golden(Check& c) {
  std::vector<nt::ExtGcdRow> trace;
  const nt::ExtGcdResult r = nt::ext_gcd(Natural(220), Natural(3), trace);
  c.expect(r.g == 1 && r.x == 1 && r.y == -73, "result row wrong");
  c.expect(trace.size() == 3, "trace length != 3");
  if (trace.size() == 3) {
    c.expect(trace[0].b == 220 && trace[0].x == 1 && trace[0].y == 0 && !trace[0].q,
             "row 0 mismatch");
    c.expect(trace[1].b == 3 && trace[1].x == 0 && trace[1].y == 1 && trace[1].q &&
                 *trace[1].q == 73,
             "row 1 mismatch");
    c.expect(trace[2].b == 1 && trace[2].x == 1 && trace[2].y == -73 && !trace[2].q,
             "row 2 mismatch");
  }
  return c.ok;
}

// --- criterion 3: square-and-multiply operation counts ---

bool criterion_square_multiply(Check& c) {
  const nt::ModExpResult small = nt::mod_exp(Natural(6), Natural(17), Natural(100));
  c.expect(small.value == 36, "6^17 mod 100 != 36");
  c.expect(small.cost == nt::ExpCost{4, 1}, "cost != (4 squarings, 1 multiplication)");

  const Natural e = (Natural(1) << 16) + Natural(1);
  const nt::ModExpResult big = nt::mod_exp(Natural(5), e, Natural(65537) * Natural(3));
  c.expect(big.cost == nt::ExpCost{16, 1}, "2^16+1 cost != (16, 1)");
  return c.ok;
}

// --- criterion 4: classical cipher goldens ---

bool criterion_classical_goldens(Check& c) {
  c.expect(cls::caesar(11, cls::LetterString::parse("SUMMER"), cls::CipherDir::encrypt).str() ==
               "DFXXPC",
           "SUMMER/11 wrong");
  c.expect(cls::caesar(11, cls::LetterString::parse("DNSZZW"), cls::CipherDir::decrypt).str() ==
               "SCHOOL",
           "DNSZZW/11 wrong");
  c.expect(cls::vigenere(cls::LetterString::parse("ENGLISH"),
                         cls::LetterString::parse("FINNISHISALLGREEKTOGERMANS"),
                         cls::CipherDir::encrypt)
                   .str() == "JVTYQKOMFGWTYYIRQEWYLVZGYA",
           "repeating-key table row wrong");
  return c.ok;
}

// --- criterion 5: perfect-secrecy goldens ---

cls::FiniteCryptosystem biased_demo_system() {
  cls::FiniteCryptosystem sys;
  sys.plaintexts = {"0", "1"};
  sys.ciphertexts = {"a", "b"};
  sys.keys = {"A", "B"};
  sys.plaintext_dist = {Rational(1, 4), Rational(3, 4)};
  sys.key_dist = {Rational(1, 4), Rational(3, 4)};
  sys.enc = {{0, 1}, {1, 0}};
  sys.validate();
  return sys;
}

bool criterion_secrecy_goldens(Check& c) {
  const auto sys = biased_demo_system();
  c.expect(cls::ciphertext_probability(sys, 0) == Rational(5, 8), "Pr(a) != 5/8");
  c.expect(cls::ciphertext_probability(sys, 1) == Rational(3, 8), "Pr(b) != 3/8");
  c.expect(cls::posterior(sys, 0, 0) == Rational(1, 10), "Pr(0|a) != 1/10");
  c.expect(cls::posterior(sys, 1, 0) == Rational(9, 10), "Pr(1|a) != 9/10");
  c.expect(cls::posterior(sys, 0, 1) == Rational(1, 2), "Pr(0|b) != 1/2");
  c.expect(cls::posterior(sys, 1, 1) == Rational(1, 2), "Pr(1|b) != 1/2");
  const auto verdict = cls::is_perfectly_secret(sys);
  c.expect(!verdict.perfectly_secret, "biased system reported secret");
  c.expect(verdict.witness && verdict.witness->first == 0 && verdict.witness->second == 0,
           "witness != (0, a)");

  for (std::size_t nbits : {2u, 3u}) {
    const auto otp = cls::one_time_pad_system(nbits);
    c.expect(cls::is_perfectly_secret(otp).perfectly_secret,
             "pad over " + std::to_string(nbits) + " bits not secret");
    const auto cond = cls::shannon_conditions(otp);
    c.expect(cond.uniform_keys && cond.unique_key_per_pair,
             "pad over " + std::to_string(nbits) + " bits fails a condition");
  }
  return c.ok;
}

// --- criterion 6: the secrecy characterization, swept over a family ---

bool criterion_shannon_sweep(Check& c) {
  const auto family = testhelpers::characterization_family();
  c.expect(family.size() >= 200, "family smaller than 200 systems");
  std::size_t mismatches = 0;
  std::size_t secret_count = 0;
  for (const auto& sys : family) {
    const bool secret = cls::is_perfectly_secret(sys).perfectly_secret;
    const auto cond = cls::shannon_conditions(sys);
    if (secret) ++secret_count;
    if (secret != (cond.uniform_keys && cond.unique_key_per_pair)) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  // The family must exercise both sides of the equivalence.
  c.expect(secret_count > 0, "no perfectly secret system in the family");
  c.expect(secret_count < family.size(), "every system perfectly secret");
  c.detail << family.size() << " systems, " << secret_count << " secret";
  return c.ok;
}

// --- criterion 7: small-d recovery succeeds inside the bound, fails above ---

bool criterion_wiener(Check& c) {
  Rng rng(0xC0FFEE);
  for (int i = 0; i < 50; ++i) {
    const rsa::RsaKeyPair kp = testhelpers::make_small_d_key(40, rng);
    const auto recovered = atk::wiener_attack(kp.pub);
    if (!recovered || recovered->d != kp.priv.d) {
      c.expect(false, "vulnerable key " + std::to_string(i) + " not recovered");
      return c.ok;
    }
  }
  for (int i = 0; i < 50; ++i) {
    const rsa::RsaKeyPair kp = testhelpers::make_large_d_key(40, rng);
    if (atk::wiener_attack(kp.pub).has_value()) {
      c.expect(false, "large-d key " + std::to_string(i) + " was (mis)recovered");
      return c.ok;
    }
  }
  return c.ok;
}

// --- criterion 8: low-exponent broadcast recovery ---

bool criterion_broadcast(Check& c) {
  Rng rng(314159);
  for (int i = 0; i < 100; ++i) {
    std::vector<rsa::RsaKeyPair> kps;
    for (int j = 0; j < 3; ++j) kps.push_back(rsa::rsa_keygen(40, Natural(3), rng));
    Natural min_n = kps[0].pub.n;
    for (const auto& kp : kps) min_n = std::min(min_n, kp.pub.n);
    const Natural m = rng.below(min_n);
    std::vector<Natural> cts, mods;
    for (const auto& kp : kps) {
      cts.push_back(rsa::rsa_encrypt(kp.pub, m));
      mods.push_back(kp.pub.n);
    }
    const auto recovered = atk::broadcast_attack_e3(cts, mods);
    if (!recovered || *recovered != m) {
      c.expect(false, "instance " + std::to_string(i) + " not recovered");
      return c.ok;
    }
  }
  return c.ok;
}

// --- criterion 9: protocol correctness across the suite ---

bool criterion_protocols(Check& c) {
  Rng rng(0xAB5EED);
  const proto::DhParams params = proto::make_dh_params(32, rng);
  const Natural order = params.p - Natural(1);
  auto exponent = [&] { return rng.range(Natural(1), params.p - Natural(2)); };
  auto unit_exponent = [&] {
    for (;;) {
      const Natural v = exponent();
      if (gcd(v, order) == 1) return v;
    }
  };

  for (int i = 0; i < 100; ++i) {
    const proto::DhRun dh = proto::dh_keyagree(params, exponent(), exponent());
    if (dh.alice_key != dh.bob_key) {
      c.expect(false, "key agreement mismatch");
      return c.ok;
    }
  }

  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint8_t> letters(1 + rng.below_u64(12));
    for (auto& l : letters) l = static_cast<std::uint8_t>(rng.below_u64(26));
    const auto msg = cls::LetterString::from_residues(letters);
    const proto::HybridDhRun run = proto::hybrid_dh(params, exponent(), exponent(), msg);
    if (!(run.recovered == msg)) {
      c.expect(false, "hybrid round trip failed");
      return c.ok;
    }
  }

  for (int i = 0; i < 100; ++i) {
    const Natural b = exponent();
    const Natural m = rng.range(Natural(1), params.p - Natural(1));
    const proto::ElGamalRun run = proto::elgamal_session(params, b, unit_exponent(), m);
    if (run.recovered != m) {
      c.expect(false, "masked encryption round trip failed");
      return c.ok;
    }
    const proto::ElGamalSignature sig = proto::elgamal_sign(params, b, unit_exponent(), m);
    if (!proto::elgamal_verify(params, sig.beta, m, sig.rho, sig.s)) {
      c.expect(false, "signature failed to verify");
      return c.ok;
    }
  }

  const Natural shamir_p = nt::gen_prime(32, rng);
  for (int i = 0; i < 100; ++i) {
    Natural a, b;
    do {
      a = rng.range(Natural(1), shamir_p - Natural(2));
    } while (gcd(a, shamir_p - Natural(1)) != 1);
    do {
      b = rng.range(Natural(1), shamir_p - Natural(2));
    } while (gcd(b, shamir_p - Natural(1)) != 1);
    const Natural m = rng.range(Natural(1), shamir_p - Natural(1));
    if (proto::shamir_no_key(shamir_p, a, b, m).recovered != m) {
      c.expect(false, "no-key exchange failed");
      return c.ok;
    }
  }

  const auto k3 = graphs::Graph::complete(3);
  const Natural inst = ao::encode_graph(k3);
  const auto colorings = graphs::enumerate_3colorings(k3);
  auto draw_cert = [&] {
    return ao::pair(inst, ao::encode_certificate(inst, colorings[rng.below_u64(colorings.size())]));
  };
  const ao::PartialFn cert_total = ao::as_partial(ao::totalize(ao::sigma_cert));
  const ao::PartialFn add = ao::as_partial([](const Natural& a, const Natural& b) { return a + b; });
  for (int i = 0; i < 100; ++i) {
    const auto with_cert =
        proto::rivest_sherman_keyagree(cert_total, draw_cert(), draw_cert(), draw_cert());
    const auto with_add =
        proto::rivest_sherman_keyagree(add, rng.bits(32), rng.bits(32), rng.bits(32));
    if (!with_cert.agreed || !with_add.agreed) {
      c.expect(false, "two-ary key agreement mismatch");
      return c.ok;
    }
  }

  for (int i = 0; i < 100; ++i) {
    const Natural m = draw_cert();
    const auto signed_msg = proto::rabi_sherman_sign(ao::sigma_cert, draw_cert(), draw_cert(), m);
    if (!proto::rabi_sherman_verify(ao::sigma_cert, signed_msg.pub, m, signed_msg.signature)) {
      c.expect(false, "two-ary signature failed to verify");
      return c.ok;
    }
  }
  return c.ok;
}

// --- criterion 10: the interceptor owns both sessions ---

bool criterion_mitm(Check& c) {
  Rng rng(0xE1C4);
  const proto::DhParams params = proto::make_dh_params(48, rng);
  auto exponent = [&] { return rng.range(Natural(1), params.p - Natural(2)); };
  for (int i = 0; i < 100; ++i) {
    const Natural a = exponent(), b = exponent(), e1 = exponent(), e2 = exponent();
    const proto::MitmRun run = proto::dh_mitm(params, a, b, e1, e2);
    const Natural honest = proto::dh_algebra(params, a, b).key;
    if (run.alice_key != run.erich_alice_key || run.bob_key != run.erich_bob_key) {
      c.expect(false, "interceptor failed to derive a session key");
      return c.ok;
    }
    if (run.alice_key == honest || run.bob_key == honest) {
      c.expect(false, "session key collided with the honest key");
      return c.ok;
    }
  }
  return c.ok;
}

// --- criterion 11: associativity and commutativity of the certificate sigma ---

bool criterion_aowf_properties(Check& c) {
  using graphs::Graph;
  const ao::PartialFn cert_total = ao::as_partial(ao::totalize(ao::sigma_cert));
  for (const auto& [name, graph] :
       {std::pair<const char*, Graph>{"k3", Graph::complete(3)},
        std::pair<const char*, Graph>{"p3", Graph::path(3)},
        std::pair<const char*, Graph>{"c5", Graph::cycle(5)}}) {
    const auto domain = ao::certificate_domain(graph);
    const std::size_t triples = domain.size() * domain.size() * domain.size();
    c.expect(triples >= 27000, std::string(name) + ": only " + std::to_string(triples) + " triples");
    c.expect(ao::check_associative(ao::sigma_cert, domain).holds,
             std::string(name) + ": not associative");
    c.expect(ao::check_commutative(ao::sigma_cert, domain).holds,
             std::string(name) + ": not commutative");
    c.expect(ao::check_associative(cert_total, domain).holds,
             std::string(name) + ": totalization broke associativity");
    c.expect(ao::check_commutative(cert_total, domain).holds,
             std::string(name) + ": totalization broke commutativity");
  }

  const ao::PartialFn sub = ao::as_partial(
      [](const Natural& a, const Natural& b) { return a >= b ? a - b : Natural(0); });
  std::vector<Natural> small;
  for (std::uint64_t i = 0; i < 20; ++i) small.emplace_back(i);
  const ao::CheckResult control = ao::check_associative(sub, small);
  c.expect(!control.holds && control.witness.size() == 3, "control function not caught");
  return c.ok;
}

// --- criterion 12: totality and the universal inverter ---

bool criterion_sigma_strong(Check& c) {
  const ao::TotalFn rho = ao::default_rho();
  for (std::uint64_t u = 0; u < 100; ++u)
    for (std::uint64_t v = 0; v < 100; ++v) (void)ao::sigma_strong(Natural(u), Natural(v), rho);

  Rng rng(0x516A);
  for (int i = 0; i < 10000; ++i) {
    const Natural a = rng.below_u64(10000);
    const Natural b = rng.below_u64(10000);
    (void)ao::sigma_strong(a, b, rho);  // total: any throw fails the criterion
  }
  for (int i = 0; i < 10000; ++i) {
    const Natural z = rng.bits(40);
    const auto [first, second] = ao::universal_inverter_for_sigma_strong(z);
    if (ao::sigma_strong(first, second, rho) != z) {
      c.expect(false, "inverter identity failed");
      return c.ok;
    }
  }
  return c.ok;
}

// --- criterion 13: soundness rates and amplification ---

bool criterion_soundness(Check& c) {
  auto in_band = [](std::size_t wins, std::size_t rounds) {
    const double rate = static_cast<double>(wins) / static_cast<double>(rounds);
    return rate >= 0.47 && rate <= 0.53;
  };
  const std::size_t rounds = 10000;

  Rng rng(0xBADBEEF);
  // Non-isomorphism rounds on an isomorphic pair.
  const graphs::Graph g = graphs::Graph::path(5);
  const graphs::Graph h = graphs::apply_permutation(graphs::random_permutation(5, rng), g);
  std::size_t gni_wins = 0;
  for (std::size_t i = 0; i < rounds; ++i)
    if (zkp::gni_round(g, h, zkp::GniProver::honest, rng).verdict) ++gni_wins;
  c.expect(in_band(gni_wins, rounds), "gni rate " + std::to_string(gni_wins) + "/10000");

  // Identification impostors.
  zkp::GmwKeys gmw;
  do {
    gmw = zkp::gmw_keygen(6, rng);
  } while (gmw.pub.g1 == gmw.pub.g2);
  std::size_t gmw_wins = 0;
  for (std::size_t i = 0; i < rounds; ++i)
    if (zkp::gmw_round(gmw.pub, std::nullopt, rng).verdict) ++gmw_wins;
  c.expect(in_band(gmw_wins, rounds), "gmw impostor rate " + std::to_string(gmw_wins) + "/10000");

  const zkp::FsKeys fs = zkp::fs_keygen(24, rng);
  const zkp::FsPublic fs_pub{fs.n, fs.v};
  std::size_t fs_wins = 0;
  for (std::size_t i = 0; i < rounds; ++i)
    if (zkp::fs_round(fs_pub, zkp::FsResponder::impostor(), rng).verdict) ++fs_wins;
  c.expect(in_band(fs_wins, rounds), "fs impostor rate " + std::to_string(fs_wins) + "/10000");

  // 20-round amplification over a million trials: less than 10 * 2^-20.
  std::size_t accepted = 0;
  for (std::size_t trial = 0; trial < 1000000; ++trial) {
    if (zkp::amplified_accept(
            [&] { return zkp::fs_round(fs_pub, zkp::FsResponder::impostor(), rng).verdict; },
            20))
      ++accepted;
  }
  c.expect(accepted < 10, "amplified impostor accepted " + std::to_string(accepted) + " times");
  c.detail << "rates " << gni_wins << "/" << gmw_wins << "/" << fs_wins << " per 10^4, amplified "
           << accepted << "/10^6";
  return c.ok;
}

// --- criterion 14: simulated rounds are literally identically distributed ---

bool criterion_perfect_zk(Check& c) {
  zkp::GmwKeys gmw;
  gmw.pub.g1 = graphs::Graph::path(3);
  gmw.secret = graphs::Permutation({1, 2, 0});
  gmw.pub.g2 = graphs::apply_permutation(gmw.secret, gmw.pub.g1);
  c.expect(zkp::gmw_exact_real(gmw) == zkp::gmw_exact_simulated(gmw.pub),
           "graph-protocol distributions differ");

  zkp::FsKeys fs;
  fs.p = 3;
  fs.q = 5;
  fs.n = 15;
  fs.s = 2;
  fs.v = 4;
  c.expect(zkp::fs_exact_real(fs) == zkp::fs_exact_simulated(zkp::FsPublic{fs.n, fs.v}),
           "square-root-protocol distributions differ");
  return c.ok;
}

// --- criterion 15: simulator rejection cost ---

bool criterion_simulator_cost(Check& c) {
  Rng rng(0x5EED5);
  const zkp::GmwKeys gmw = zkp::gmw_keygen(5, rng);
  const zkp::FsKeys fs = zkp::fs_keygen(24, rng);
  const zkp::FsPublic fs_pub{fs.n, fs.v};
  const std::size_t rounds = 10000;

  std::uint64_t gmw_attempts = 0, fs_attempts = 0;
  for (std::size_t i = 0; i < rounds; ++i) {
    gmw_attempts += zkp::gmw_simulator_round(gmw.pub, rng).attempts;
    fs_attempts += zkp::fs_simulator_round(fs_pub, rng).attempts;
  }
  const double gmw_mean = static_cast<double>(gmw_attempts) / rounds;
  const double fs_mean = static_cast<double>(fs_attempts) / rounds;
  c.expect(gmw_mean >= 1.9 && gmw_mean <= 2.1, "graph simulator mean off");
  c.expect(fs_mean >= 1.9 && fs_mean <= 2.1, "square-root simulator mean off");
  std::ostringstream means;
  means << std::fixed << std::setprecision(4) << gmw_mean << " / " << fs_mean;
  c.detail << "mean attempts " << means.str();
  return c.ok;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 = no explicit budget
  std::function<bool(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "RSA golden key and exhaustive round trip", 1.0, criterion_rsa_golden},
      {2, "extended Euclid iteration trace", 1.0, criterion_euclid_golden},
      {3, "square-and-multiply operation counts", 0, criterion_square_multiply},
      {4, "classical cipher goldens", 0, criterion_classical_goldens},
      {5, "perfect-secrecy goldens", 1.0, criterion_secrecy_goldens},
      {6, "secrecy characterization sweep", 30.0, criterion_shannon_sweep},
      {7, "small-d recovery: 50 hits, 50 misses", 60.0, criterion_wiener},
      {8, "broadcast e=3 recovery on 100 instances", 10.0, criterion_broadcast},
      {9, "protocol correctness, 100 instances each", 60.0, criterion_protocols},
      {10, "interceptor sessions on 100 runs", 0, criterion_mitm},
      {11, "certificate sigma properties, exhaustive", 120.0, criterion_aowf_properties},
      {12, "total sigma and its universal inverter", 0, criterion_sigma_strong},
      {13, "soundness rates and amplification", 300.0, criterion_soundness},
      {14, "perfect zero-knowledge distribution equality", 60.0, criterion_perfect_zk},
      {15, "simulator rejection cost", 0, criterion_simulator_cost},
  };

  std::optional<int> only;
  if (argc > 1) only = std::atoi(argv[1]);

  bool all_ok = true;
  for (const Criterion& criterion : criteria) {
    if (only && *only != criterion.id) continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds > 0 && elapsed > criterion.budget_seconds) {
      ok = false;
      check.expect(false, "over time budget");
    }
    ok = ok && check.ok;
    all_ok = all_ok && ok;
    std::cout << (ok ? "passed" : "FAILED") << "  criterion " << std::setw(2) << criterion.id
              << "  " << criterion.name << "  (" << std::fixed << std::setprecision(2) << elapsed
              << " s" << (check.detail.str().empty() ? "" : "; " + check.detail.str()) << ")\n";
  }
  return all_ok ? 0 : 1;
}

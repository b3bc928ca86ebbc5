#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "workbench/errors.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/zkp.hpp"

using namespace workbench;
using namespace workbench::zkp;
using graphs::Graph;
using graphs::Permutation;
namespace nt = workbench::numtheory;

namespace {

// Fixed key material for exact-enumeration comparisons.
GmwKeys gmw_fixture_n3() {
  GmwKeys keys;
  keys.pub.g1 = Graph::path(3);
  keys.secret = Permutation({1, 2, 0});
  keys.pub.g2 = graphs::apply_permutation(keys.secret, keys.pub.g1);
  return keys;
}

FsKeys fs_fixture_n15() {
  FsKeys keys;
  keys.p = 3;
  keys.q = 5;
  keys.n = 15;
  keys.s = 2;
  keys.v = 4;
  return keys;
}

GmwKeys nondegenerate_keys(std::size_t n, Rng& rng) {
  for (;;) {
    GmwKeys keys = gmw_keygen(n, rng);
    if (!(keys.pub.g1 == keys.pub.g2)) return keys;
  }
}

}  // namespace

TEST_CASE("gni: honest prover is perfect on non-isomorphic inputs") {
  Rng rng(11);
  const Graph p4 = Graph::path(4);
  const Graph s4 = Graph::star(4);
  for (int i = 0; i < 10000; ++i) CHECK(gni_round(p4, s4, GniProver::honest, rng).verdict);

  const GniOutcome outcome = gni_protocol(p4, s4, 10, GniProver::honest, rng);
  CHECK(outcome.accepted);
  CHECK(outcome.rounds.size() == 10);
}

TEST_CASE("gni: isomorphic inputs cap any prover at a coin flip") {
  Rng rng(12);
  const Graph g = Graph::random(5, rng);
  const Graph h = graphs::apply_permutation(graphs::random_permutation(5, rng), g);

  for (GniProver prover : {GniProver::honest, GniProver::guessing}) {
    std::size_t wins = 0;
    const std::size_t rounds = 4000;
    for (std::size_t i = 0; i < rounds; ++i)
      if (gni_round(g, h, prover, rng).verdict) ++wins;
    const double rate = static_cast<double>(wins) / rounds;
    CHECK(rate > 0.44);
    CHECK(rate < 0.56);
  }

  // Identical graphs behave the same way.
  std::size_t wins = 0;
  for (std::size_t i = 0; i < 2000; ++i)
    if (gni_round(g, g, GniProver::honest, rng).verdict) ++wins;
  CHECK(wins > 2000 * 0.42);
  CHECK(wins < 2000 * 0.58);

  // Single round equals the protocol at k = 1.
  Rng a(99), b(99);
  CHECK(gni_protocol(g, h, 1, GniProver::honest, a).rounds[0].verdict ==
        gni_round(g, h, GniProver::honest, b).verdict);
}

TEST_CASE("gni: ten-round acceptance on isomorphic inputs sits near 2^-10") {
  Rng rng(77);
  const Graph g = Graph::path(4);
  const Graph h = graphs::apply_permutation(graphs::random_permutation(4, rng), g);
  std::size_t accepted = 0;
  const std::size_t trials = 100000;
  for (std::size_t i = 0; i < trials; ++i)
    if (amplified_accept([&] { return gni_round(g, h, GniProver::honest, rng).verdict; }, 10))
      ++accepted;
  // Expected trials * 2^-10 ~ 97.7, sigma ~ 9.9; allow a 4-sigma band.
  CHECK(accepted > 58);
  CHECK(accepted < 137);
}

TEST_CASE("gmw_keygen: construction invariants") {
  Rng rng(13);
  const GmwKeys k1 = gmw_keygen(6, rng);
  CHECK(graphs::apply_permutation(k1.secret, k1.pub.g1) == k1.pub.g2);
  CHECK(graphs::are_isomorphic_bruteforce(k1.pub.g1, k1.pub.g2).has_value());
  const GmwKeys k2 = gmw_keygen(6, rng);
  CHECK(!(k1.pub.g1 == k2.pub.g1 && k1.secret == k2.secret));
  CHECK_THROWS_AS(gmw_keygen(2, rng), std::invalid_argument);
}

TEST_CASE("gmw rounds: knower always passes, impostor passes half the time") {
  Rng rng(14);
  const GmwKeys keys = nondegenerate_keys(5, rng);

  for (int i = 0; i < 10000; ++i) {
    const GmwRoundResult r = gmw_round(keys.pub, keys.secret, rng);
    CHECK(r.verdict);
    CHECK(gmw_verify(keys.pub, r.triple));
  }

  std::size_t wins = 0;
  const std::size_t rounds = 4000;
  for (std::size_t i = 0; i < rounds; ++i)
    if (gmw_round(keys.pub, std::nullopt, rng).verdict) ++wins;
  const double rate = static_cast<double>(wins) / rounds;
  CHECK(rate > 0.44);
  CHECK(rate < 0.56);

  // The b = a branch answers with rho itself: response matches commitment
  // directly on the committed side.
  for (int i = 0; i < 50; ++i) {
    const GmwRoundResult r = gmw_round(keys.pub, keys.secret, rng);
    const Graph& committed_side = r.triple.challenge == 1 ? keys.pub.g1 : keys.pub.g2;
    CHECK(graphs::apply_permutation(r.triple.response, committed_side) == r.triple.commitment);
  }
}

TEST_CASE("gmw simulator: emitted rounds verify; attempts are geometric(1/2)") {
  Rng rng(15);
  const GmwKeys keys = nondegenerate_keys(5, rng);
  std::uint64_t attempts = 0;
  const std::size_t rounds = 4000;
  for (std::size_t i = 0; i < rounds; ++i) {
    const GmwSimRound r = gmw_simulator_round(keys.pub, rng);
    CHECK(gmw_verify(keys.pub, r.triple));
    attempts += r.attempts;
  }
  const double mean = static_cast<double>(attempts) / rounds;
  CHECK(mean > 1.85);
  CHECK(mean < 2.15);
}

TEST_CASE("fs_keygen and the worked 77 instance") {
  Rng rng(16);
  const FsKeys keys = fs_keygen(16, rng);
  CHECK(keys.n == keys.p * keys.q);
  CHECK(keys.v == (keys.s * keys.s) % keys.n);
  CHECK(gcd(keys.s, keys.n) == 1);
  CHECK(nt::miller_rabin(keys.n, 40, rng) == nt::Primality::composite);

  // n = 77, s = 2, v = 4, r = 3, b = 1: x = 9, y = 6, and 36 = 36 checks.
  const FsPublic pub{Natural(77), Natural(4)};
  const FsTriple worked{Natural(9), 1, Natural(6)};
  CHECK((worked.y * worked.y) % pub.n == (worked.x * pub.v) % pub.n);
  CHECK(fs_verify(pub, worked));
  // b = 0 answers with r itself: y^2 = x.
  CHECK(fs_verify(pub, FsTriple{Natural(9), 0, Natural(3)}));
  CHECK(!fs_verify(pub, FsTriple{Natural(9), 1, Natural(5)}));
}

TEST_CASE("fs rounds: knower perfect, impostor halves, zero fraud caught by strict mode") {
  Rng rng(17);
  const FsKeys keys = fs_keygen(20, rng);
  const FsPublic pub{keys.n, keys.v};

  for (int i = 0; i < 10000; ++i)
    CHECK(fs_round(pub, FsResponder::knower(keys.s), rng).verdict);

  std::size_t wins = 0;
  const std::size_t rounds = 4000;
  for (std::size_t i = 0; i < rounds; ++i)
    if (fs_round(pub, FsResponder::impostor(), rng).verdict) ++wins;
  const double rate = static_cast<double>(wins) / rounds;
  CHECK(rate > 0.44);
  CHECK(rate < 0.56);

  // x = y = 0 satisfies the bare congruence but the strict verifier
  // rejects it; the lax verifier accepts the fraud.
  const FsRoundResult fraud_strict = fs_round(pub, FsResponder::zero_fraud(), rng, true);
  CHECK(!fraud_strict.verdict);
  const FsRoundResult fraud_lax = fs_round(pub, FsResponder::zero_fraud(), rng, false);
  CHECK(fraud_lax.verdict);
}

TEST_CASE("fs simulator: emitted rounds verify; attempts are geometric(1/2)") {
  Rng rng(18);
  const FsKeys keys = fs_keygen(20, rng);
  const FsPublic pub{keys.n, keys.v};
  std::uint64_t attempts = 0;
  const std::size_t rounds = 4000;
  for (std::size_t i = 0; i < rounds; ++i) {
    const FsSimRound r = fs_simulator_round(pub, rng);
    CHECK(fs_verify(pub, r.triple));
    attempts += r.attempts;
  }
  const double mean = static_cast<double>(attempts) / rounds;
  CHECK(mean > 1.85);
  CHECK(mean < 2.15);
}

TEST_CASE("exact_distribution: point mass and fair coin") {
  const Distribution point =
      exact_distribution(4, [](std::uint64_t) { return std::optional<std::string>("only"); });
  CHECK(point.size() == 1);
  CHECK(point.at("only") == 1);

  const Distribution coin = exact_distribution(2, [](std::uint64_t c) {
    return std::optional<std::string>(c == 0 ? "heads" : "tails");
  });
  CHECK(coin.at("heads") == Rational(1, 2));
  CHECK(coin.at("tails") == Rational(1, 2));

  // Rejection renormalizes over the kept coins.
  const Distribution conditioned = exact_distribution(4, [](std::uint64_t c) {
    if (c == 3) return std::optional<std::string>();
    return std::optional<std::string>("k" + std::to_string(c));
  });
  CHECK(conditioned.at("k0") == Rational(1, 3));

  CHECK_THROWS_AS(exact_distribution(1u << 30, [](std::uint64_t) {
                    return std::optional<std::string>("x");
                  }),
                  ResourceLimitError);
}

TEST_CASE("perfect zero knowledge: exact real/simulated equality on fixtures") {
  const GmwKeys gmw = gmw_fixture_n3();
  const Distribution gmw_real = gmw_exact_real(gmw);
  const Distribution gmw_sim = gmw_exact_simulated(gmw.pub);
  CHECK(gmw_real == gmw_sim);
  CHECK(gmw_real.size() == 12);  // 2 challenges x 6 responses, H determined
  Rational total = 0;
  for (const auto& [key, prob] : gmw_real) total += prob;
  CHECK(total == 1);

  const FsKeys fs = fs_fixture_n15();
  const Distribution fs_real = fs_exact_real(fs);
  const Distribution fs_sim = fs_exact_simulated(FsPublic{fs.n, fs.v});
  CHECK(fs_real == fs_sim);
  CHECK(fs_real.size() == 16);  // 8 units x 2 challenges, y determines the triple
}

TEST_CASE("simulators read only public data") {
  // The simulator interfaces accept the public pair alone, so the secret
  // cannot flow in; its canonical form must not appear in what they see.
  const GmwKeys keys = gmw_fixture_n3();
  std::ostringstream state;
  keys.pub.g1.save(state);
  keys.pub.g2.save(state);
  std::ostringstream secret;
  secret << 's' << '[';
  for (std::size_t v : keys.secret.mapping()) secret << v << ',';
  secret << ']';
  CHECK(state.str().find(secret.str()) == std::string::npos);

  const FsKeys fs = fs_fixture_n15();
  const std::string fs_state = FsPublic{fs.n, fs.v}.n.to_hex() + " " + fs.v.to_hex();
  CHECK(fs_state.find(fs.s.to_hex() + " ") == std::string::npos);
}

TEST_CASE("distributions_match_chisq: same source passes, biased source fails") {
  Rng rng(19);
  auto fair = [&rng]() { return std::string(rng.next_bit() ? "1" : "0"); };
  auto biased = [&rng]() { return std::string(rng.below_u64(4) == 0 ? "1" : "0"); };
  const Counts a = empirical_distribution(20000, fair);
  const Counts b = empirical_distribution(20000, fair);
  const Counts c = empirical_distribution(20000, biased);
  CHECK(distributions_match_chisq(a, b));
  CHECK(!distributions_match_chisq(a, c));

  // Sampled GMW real rounds match sampled simulator rounds.
  const GmwKeys keys = gmw_fixture_n3();
  Rng r1(20), r2(21);
  const Counts real = empirical_distribution(
      6000, [&]() { return canonical(gmw_round(keys.pub, keys.secret, r1).triple); });
  const Counts sim = empirical_distribution(
      6000, [&]() { return canonical(gmw_simulator_round(keys.pub, r2).triple); });
  CHECK(distributions_match_chisq(real, sim));
}

TEST_CASE("amplified_accept: identity at k=1, honest perfection, cheater suppression") {
  Rng rng(22);
  const GmwKeys keys = nondegenerate_keys(4, rng);

  CHECK(amplified_accept([] { return true; }, 1));
  CHECK(!amplified_accept([] { return false; }, 1));
  CHECK_THROWS_AS(amplified_accept([] { return true; }, 0), std::invalid_argument);

  // Honest prover survives every amplification depth.
  for (std::size_t k : {1u, 5u, 20u})
    CHECK(amplified_accept(
        [&] { return gmw_round(keys.pub, keys.secret, rng).verdict; }, k));

  // A guess-ahead impostor at k = 20: acceptance odds 2^-20; none expected
  // in ten thousand trials.
  std::size_t accepted = 0;
  for (int trial = 0; trial < 10000; ++trial)
    if (amplified_accept([&] { return gmw_round(keys.pub, std::nullopt, rng).verdict; }, 20))
      ++accepted;
  CHECK(accepted == 0);

  // Majority policy with the definition-style thresholds.
  std::size_t calls = 0;
  CHECK(amplified_accept([&] { return ++calls % 4 != 0; }, 8, AmplifyPolicy::majority));
  calls = 0;
  CHECK(!amplified_accept([&] { return ++calls % 4 == 0; }, 8, AmplifyPolicy::majority));
}

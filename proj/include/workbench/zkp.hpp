#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/graphs.hpp"
#include "workbench/natural.hpp"
#include "workbench/rng.hpp"

namespace workbench::zkp {

// --- graph non-isomorphism rounds ---

enum class GniProver {
  honest,    // unbounded power realized by exhaustive isomorphism search
  guessing,  // answers a uniform bit; the best a prover can do on isomorphic inputs
};

struct GniTriple {
  graphs::Graph commitment;  // H = pi(G_b), drawn by the verifier
  int challenge = 1;         // the verifier's hidden bit b in {1,2}
  int response = 1;          // the prover's answer a in {1,2}
};

struct GniRoundResult {
  GniTriple triple;
  bool verdict = false;  // a == b
};

GniRoundResult gni_round(const graphs::Graph& g1, const graphs::Graph& g2, GniProver prover,
                         Rng& rng);

struct GniOutcome {
  bool accepted = false;  // conjunction of per-round verdicts
  std::vector<GniRoundResult> rounds;
};

GniOutcome gni_protocol(const graphs::Graph& g1, const graphs::Graph& g2, std::size_t rounds,
                        GniProver prover, Rng& rng);

// --- the zero-knowledge identification protocol on graph isomorphism ---

struct GmwPublic {
  graphs::Graph g1;
  graphs::Graph g2;
};

struct GmwKeys {
  GmwPublic pub;
  graphs::Permutation secret;  // pi with pi(G1) = G2
};

// Random G1 (edge probability 1/2), random secret pi, G2 = pi(G1).
GmwKeys gmw_keygen(std::size_t n_vertices, Rng& rng);

struct GmwTriple {
  graphs::Graph commitment;       // H = rho(G_a)
  int challenge = 1;              // b in {1,2}
  graphs::Permutation response;   // sigma with sigma(G_b) = H expected
};

struct GmwRoundResult {
  GmwTriple triple;
  bool verdict = false;
};

// The verifier's check: response(G_b) == H.
bool gmw_verify(const GmwPublic& pub, const GmwTriple& t);

// One round. A prover holding the secret answers every challenge; an
// impostor (secret absent) pre-commits to a guessed side and survives only
// when the challenge happens to match.
GmwRoundResult gmw_round(const GmwPublic& pub, const std::optional<graphs::Permutation>& secret,
                         Rng& rng);

struct GmwSimRound {
  GmwTriple triple;
  std::uint64_t attempts = 0;  // total attempts including the kept one
};

// Rejection-sampling simulator: guesses the challenge, discards mismatched
// rounds, emits only matched ones. Sees nothing but the public pair.
GmwSimRound gmw_simulator_round(const GmwPublic& pub, Rng& rng);

// --- the square-root identification protocol ---

struct FsKeys {
  Natural p;  // secret prime
  Natural q;  // secret prime
  Natural n;  // public modulus p*q
  Natural s;  // secret, a unit mod n
  Natural v;  // public s^2 mod n
};

struct FsPublic {
  Natural n;
  Natural v;
};

// Keys with gcd(s, n) = 1 and v = s^2 mod n != 1.
FsKeys fs_keygen(std::size_t bits, Rng& rng);

struct FsTriple {
  Natural x;          // commitment r^2 (or the impostor's doctored value)
  int challenge = 0;  // b in {0,1}
  Natural y;
};

struct FsResponder {
  enum class Kind {
    knower,      // holds s, answers y = r * s^b
    impostor,    // guesses the challenge and doctors the commitment
    zero_fraud,  // sends x = y = 0, which passes the bare congruence
  };
  Kind kind = Kind::knower;
  std::optional<Natural> secret;  // s, required for knower

  static FsResponder knower(Natural s) { return {Kind::knower, std::move(s)}; }
  static FsResponder impostor() { return {Kind::impostor, std::nullopt}; }
  static FsResponder zero_fraud() { return {Kind::zero_fraud, std::nullopt}; }
};

struct FsRoundResult {
  FsTriple triple;
  bool verdict = false;
};

// The verifier's congruence y^2 = x * v^b (mod n); in strict mode (the
// default) zero commitments or responses are rejected outright.
bool fs_verify(const FsPublic& pub, const FsTriple& t, bool strict = true);

FsRoundResult fs_round(const FsPublic& pub, const FsResponder& responder, Rng& rng,
                       bool strict = true);

struct FsSimRound {
  FsTriple triple;
  std::uint64_t attempts = 0;
};

// Rejection-sampling simulator; requires v to be a unit mod n.
FsSimRound fs_simulator_round(const FsPublic& pub, Rng& rng);

// --- transcript distribution comparison ---

// Canonical forms used as distribution keys.
std::string canonical(const GmwTriple& t);
std::string canonical(const FsTriple& t);

using Distribution = std::map<std::string, Rational>;
using Counts = std::map<std::string, std::uint64_t>;

// Exact distribution over a uniform finite coin space by full enumeration.
// emit returns the canonical outcome for a coin, or empty when that coin is
// rejected (rejection sampling conditions on the kept coins).
Distribution exact_distribution(std::uint64_t coin_count,
                                const std::function<std::optional<std::string>(std::uint64_t)>& emit,
                                std::uint64_t enumeration_limit = 10000000);

// Frequency map over `samples` draws.
Counts empirical_distribution(std::uint64_t samples, const std::function<std::string()>& draw);

// Exact coin-space enumerations of one protocol round, real prover versus
// simulator. Real coins: (rho, a, b) for the graph protocol, (r, b) for the
// square-root protocol. Simulated coins add the guessed challenge and
// condition on the kept branch.
Distribution gmw_exact_real(const GmwKeys& keys);
Distribution gmw_exact_simulated(const GmwPublic& pub);
Distribution fs_exact_real(const FsKeys& keys);
Distribution fs_exact_simulated(const FsPublic& pub);

// Two-sample chi-square comparison at the given significance (default
// 0.001); true when the samples are consistent with one distribution.
bool distributions_match_chisq(const Counts& a, const Counts& b, double significance = 0.001);

// --- amplification ---

enum class AmplifyPolicy {
  all_rounds,  // accept only if every round accepts
  majority,    // accept if the acceptance fraction reaches the threshold
};

struct Thresholds {
  Rational accept = Rational(3, 4);
  Rational reject = Rational(1, 4);
};

// Runs up to k rounds of per_round under the chosen policy. all_rounds
// short-circuits on the first failure, driving a cheater's acceptance to
// 2^-k; majority exposes the definition-style thresholds as parameters.
bool amplified_accept(const std::function<bool()>& per_round, std::size_t k,
                      AmplifyPolicy policy = AmplifyPolicy::all_rounds, Thresholds thresholds = {});

// JSON views for the experiment CLI.
nlohmann::json json_triple(const GmwTriple& t, bool verdict);
nlohmann::json json_triple(const FsTriple& t, bool verdict);
nlohmann::json json_triple(const GniTriple& t, bool verdict);

}  // namespace workbench::zkp

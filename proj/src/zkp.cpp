#include "workbench/zkp.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "workbench/errors.hpp"
#include "workbench/numtheory.hpp"

namespace workbench::zkp {

namespace nt = workbench::numtheory;
using graphs::Graph;
using graphs::Permutation;
using nlohmann::json;

GniRoundResult gni_round(const Graph& g1, const Graph& g2, GniProver prover, Rng& rng) {
  if (g1.vertex_count() != g2.vertex_count())
    throw std::invalid_argument("gni_round: graphs must share a vertex count");

  GniRoundResult out;
  const Permutation pi = graphs::random_permutation(g1.vertex_count(), rng);
  out.triple.challenge = rng.next_bit() ? 2 : 1;
  out.triple.commitment = graphs::apply_permutation(pi, out.triple.challenge == 1 ? g1 : g2);

  switch (prover) {
    case GniProver::honest:
      // Unbounded prover: decide by exhaustive search which side H matches;
      // on isomorphic inputs both match and the first is reported.
      out.triple.response =
          graphs::are_isomorphic_bruteforce(g1, out.triple.commitment).has_value() ? 1 : 2;
      break;
    case GniProver::guessing:
      out.triple.response = rng.next_bit() ? 2 : 1;
      break;
  }
  out.verdict = out.triple.response == out.triple.challenge;
  return out;
}

GniOutcome gni_protocol(const Graph& g1, const Graph& g2, std::size_t rounds, GniProver prover,
                        Rng& rng) {
  GniOutcome out;
  out.accepted = true;
  for (std::size_t i = 0; i < rounds; ++i) {
    out.rounds.push_back(gni_round(g1, g2, prover, rng));
    out.accepted = out.accepted && out.rounds.back().verdict;
  }
  return out;
}

GmwKeys gmw_keygen(std::size_t n_vertices, Rng& rng) {
  if (n_vertices < 3) throw std::invalid_argument("gmw_keygen: need at least 3 vertices");
  GmwKeys keys;
  keys.pub.g1 = Graph::random(n_vertices, rng);
  keys.secret = graphs::random_permutation(n_vertices, rng);
  keys.pub.g2 = graphs::apply_permutation(keys.secret, keys.pub.g1);
  return keys;
}

bool gmw_verify(const GmwPublic& pub, const GmwTriple& t) {
  if (t.challenge != 1 && t.challenge != 2) return false;
  const Graph& target = t.challenge == 1 ? pub.g1 : pub.g2;
  if (t.response.size() != target.vertex_count()) return false;
  return graphs::apply_permutation(t.response, target) == t.commitment;
}

GmwRoundResult gmw_round(const GmwPublic& pub, const std::optional<Permutation>& secret,
                         Rng& rng) {
  GmwRoundResult out;
  const Permutation rho = graphs::random_permutation(pub.g1.vertex_count(), rng);
  const int a = rng.next_bit() ? 2 : 1;
  out.triple.commitment = graphs::apply_permutation(rho, a == 1 ? pub.g1 : pub.g2);

  const int b = rng.next_bit() ? 2 : 1;
  out.triple.challenge = b;

  if (!secret) {
    // Impostor: committed to side a; rho only answers the challenge b = a.
    out.triple.response = rho;
  } else if (b == a) {
    out.triple.response = rho;
  } else if (b == 1) {  // a == 2: G2 = pi(G1), so rho o pi maps G1 to H
    out.triple.response = graphs::compose(rho, *secret);
  } else {  // b == 2, a == 1
    out.triple.response = graphs::compose(rho, secret->inverse());
  }
  out.verdict = gmw_verify(pub, out.triple);
  return out;
}

GmwSimRound gmw_simulator_round(const GmwPublic& pub, Rng& rng) {
  GmwSimRound out;
  for (;;) {
    ++out.attempts;
    const Permutation rho = graphs::random_permutation(pub.g1.vertex_count(), rng);
    const int a = rng.next_bit() ? 2 : 1;
    const Graph h = graphs::apply_permutation(rho, a == 1 ? pub.g1 : pub.g2);
    const int b = rng.next_bit() ? 2 : 1;  // the simulated verifier's coin
    if (b != a) continue;                  // delete the round and retry
    out.triple = GmwTriple{h, b, rho};
    return out;
  }
}

FsKeys fs_keygen(std::size_t bits, Rng& rng) {
  if (bits < 8) throw std::invalid_argument("fs_keygen: need at least 8 bits");
  FsKeys keys;
  const std::size_t half = bits / 2;
  keys.p = nt::gen_prime(bits - half, rng);
  do {
    keys.q = nt::gen_prime(half, rng);
  } while (keys.q == keys.p);
  keys.n = keys.p * keys.q;
  for (;;) {
    keys.s = rng.range(Natural(2), keys.n - Natural(1));
    if (gcd(keys.s, keys.n) != 1) continue;
    keys.v = (keys.s * keys.s) % keys.n;
    if (keys.v != 1) break;  // v = 1 would let anyone answer both challenges
  }
  return keys;
}

bool fs_verify(const FsPublic& pub, const FsTriple& t, bool strict) {
  if (t.challenge != 0 && t.challenge != 1) return false;
  if (strict && (t.x.is_zero() || t.y.is_zero())) return false;
  const Natural lhs = (t.y * t.y) % pub.n;
  const Natural rhs = t.challenge == 0 ? t.x % pub.n : (t.x * pub.v) % pub.n;
  return lhs == rhs;
}

namespace {

Natural draw_unit(const Natural& n, Rng& rng) {
  for (;;) {
    const Natural r = rng.range(Natural(1), n - Natural(1));
    if (gcd(r, n) == 1) return r;
  }
}

}  // namespace

FsRoundResult fs_round(const FsPublic& pub, const FsResponder& responder, Rng& rng, bool strict) {
  FsRoundResult out;
  switch (responder.kind) {
    case FsResponder::Kind::knower: {
      if (!responder.secret) throw std::invalid_argument("fs_round: knower needs the secret");
      const Natural r = draw_unit(pub.n, rng);
      out.triple.x = (r * r) % pub.n;
      out.triple.challenge = rng.next_bit() ? 1 : 0;
      out.triple.y =
          out.triple.challenge == 0 ? r : (r * *responder.secret) % pub.n;
      break;
    }
    case FsResponder::Kind::impostor: {
      // Guess c, send x = r^2 v^-c; the answer y = r works exactly when the
      // verifier's bit matches the guess.
      const Natural r = draw_unit(pub.n, rng);
      const auto v_inv = nt::mod_inverse(pub.v, pub.n);
      if (!v_inv) throw std::invalid_argument("fs_round: v is not a unit mod n");
      const int c = rng.next_bit() ? 1 : 0;
      out.triple.x = c == 0 ? (r * r) % pub.n : (r * r % pub.n * *v_inv) % pub.n;
      out.triple.challenge = rng.next_bit() ? 1 : 0;
      out.triple.y = r;
      break;
    }
    case FsResponder::Kind::zero_fraud: {
      out.triple.x = 0;
      out.triple.challenge = rng.next_bit() ? 1 : 0;
      out.triple.y = 0;
      break;
    }
  }
  out.verdict = fs_verify(pub, out.triple, strict);
  return out;
}

FsSimRound fs_simulator_round(const FsPublic& pub, Rng& rng) {
  const auto v_inv = nt::mod_inverse(pub.v, pub.n);
  if (!v_inv) throw std::invalid_argument("fs_simulator_round: v is not a unit mod n");
  FsSimRound out;
  for (;;) {
    ++out.attempts;
    const Natural r = draw_unit(pub.n, rng);
    const int c = rng.next_bit() ? 1 : 0;
    const Natural x = c == 0 ? (r * r) % pub.n : (r * r % pub.n * *v_inv) % pub.n;
    const int b = rng.next_bit() ? 1 : 0;
    if (b != c) continue;  // delete and repeat
    out.triple = FsTriple{x, b, r};
    return out;
  }
}

std::string canonical(const GmwTriple& t) {
  std::ostringstream os;
  os << "H{";
  for (const auto& [i, j] : t.commitment.edges()) os << i << '-' << j << ',';
  os << "}b" << t.challenge << "s[";
  for (std::size_t v : t.response.mapping()) os << v << ',';
  os << ']';
  return os.str();
}

std::string canonical(const FsTriple& t) {
  return "x" + t.x.to_hex() + "b" + std::to_string(t.challenge) + "y" + t.y.to_hex();
}

Distribution exact_distribution(std::uint64_t coin_count,
                                const std::function<std::optional<std::string>(std::uint64_t)>& emit,
                                std::uint64_t enumeration_limit) {
  if (coin_count == 0) throw std::invalid_argument("exact_distribution: empty coin space");
  if (coin_count > enumeration_limit)
    throw ResourceLimitError("exact_distribution: coin space too large to enumerate");
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t kept = 0;
  for (std::uint64_t coin = 0; coin < coin_count; ++coin) {
    const auto outcome = emit(coin);
    if (!outcome) continue;
    ++counts[*outcome];
    ++kept;
  }
  if (kept == 0) throw std::invalid_argument("exact_distribution: every coin was rejected");
  Distribution out;
  for (const auto& [key, count] : counts) out[key] = Rational(count, kept);
  return out;
}

Counts empirical_distribution(std::uint64_t samples, const std::function<std::string()>& draw) {
  Counts out;
  for (std::uint64_t i = 0; i < samples; ++i) ++out[draw()];
  return out;
}

Distribution gmw_exact_real(const GmwKeys& keys) {
  const auto perms = graphs::all_permutations(keys.pub.g1.vertex_count());
  const std::uint64_t coins = static_cast<std::uint64_t>(perms.size()) * 4;
  return exact_distribution(coins, [&](std::uint64_t coin) -> std::optional<std::string> {
    const Permutation& rho = perms[coin / 4];
    const int a = (coin / 2) % 2 == 0 ? 1 : 2;
    const int b = coin % 2 == 0 ? 1 : 2;
    GmwTriple t;
    t.commitment = graphs::apply_permutation(rho, a == 1 ? keys.pub.g1 : keys.pub.g2);
    t.challenge = b;
    if (b == a)
      t.response = rho;
    else if (b == 1)
      t.response = graphs::compose(rho, keys.secret);
    else
      t.response = graphs::compose(rho, keys.secret.inverse());
    return canonical(t);
  });
}

Distribution gmw_exact_simulated(const GmwPublic& pub) {
  const auto perms = graphs::all_permutations(pub.g1.vertex_count());
  const std::uint64_t coins = static_cast<std::uint64_t>(perms.size()) * 4;
  return exact_distribution(coins, [&](std::uint64_t coin) -> std::optional<std::string> {
    const Permutation& rho = perms[coin / 4];
    const int a = (coin / 2) % 2 == 0 ? 1 : 2;
    const int b = coin % 2 == 0 ? 1 : 2;
    if (b != a) return std::nullopt;  // deleted round
    GmwTriple t;
    t.commitment = graphs::apply_permutation(rho, a == 1 ? pub.g1 : pub.g2);
    t.challenge = b;
    t.response = rho;
    return canonical(t);
  });
}

namespace {

std::vector<Natural> units_mod(const Natural& n) {
  if (n > 100000)
    throw ResourceLimitError("units_mod: modulus too large for coin-space enumeration");
  std::vector<Natural> units;
  for (Natural r = 1; r < n; ++r)
    if (gcd(r, n) == 1) units.push_back(r);
  return units;
}

}  // namespace

Distribution fs_exact_real(const FsKeys& keys) {
  const auto units = units_mod(keys.n);
  const std::uint64_t coins = static_cast<std::uint64_t>(units.size()) * 2;
  return exact_distribution(coins, [&](std::uint64_t coin) -> std::optional<std::string> {
    const Natural& r = units[coin / 2];
    const int b = coin % 2;
    FsTriple t;
    t.x = (r * r) % keys.n;
    t.challenge = b;
    t.y = b == 0 ? r : (r * keys.s) % keys.n;
    return canonical(t);
  });
}

Distribution fs_exact_simulated(const FsPublic& pub) {
  const auto units = units_mod(pub.n);
  const auto v_inv = nt::mod_inverse(pub.v, pub.n);
  if (!v_inv) throw std::invalid_argument("fs_exact_simulated: v is not a unit mod n");
  const std::uint64_t coins = static_cast<std::uint64_t>(units.size()) * 4;
  return exact_distribution(coins, [&](std::uint64_t coin) -> std::optional<std::string> {
    const Natural& r = units[coin / 4];
    const int c = (coin / 2) % 2;
    const int b = coin % 2;
    if (b != c) return std::nullopt;
    FsTriple t;
    t.x = c == 0 ? (r * r) % pub.n : (r * r % pub.n * *v_inv) % pub.n;
    t.challenge = b;
    t.y = r;
    return canonical(t);
  });
}

bool distributions_match_chisq(const Counts& a, const Counts& b, double significance) {
  std::uint64_t total_a = 0, total_b = 0;
  std::set<std::string> cells;
  for (const auto& [k, v] : a) {
    total_a += v;
    cells.insert(k);
  }
  for (const auto& [k, v] : b) {
    total_b += v;
    cells.insert(k);
  }
  if (total_a == 0 || total_b == 0)
    throw std::invalid_argument("distributions_match_chisq: empty sample");
  if (cells.size() < 2) return true;  // single cell: nothing to distinguish

  double statistic = 0;
  const double na = static_cast<double>(total_a), nb = static_cast<double>(total_b);
  for (const std::string& cell : cells) {
    const double oa = a.count(cell) ? static_cast<double>(a.at(cell)) : 0.0;
    const double ob = b.count(cell) ? static_cast<double>(b.at(cell)) : 0.0;
    const double pooled = (oa + ob) / (na + nb);
    const double ea = na * pooled, eb = nb * pooled;
    statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }

  // Wilson-Hilferty quantile for chi-square with df = cells - 1.
  const double df = static_cast<double>(cells.size() - 1);
  double z;  // standard normal quantile of 1 - significance
  if (significance <= 0.001)
    z = 3.0902;
  else if (significance <= 0.01)
    z = 2.3263;
  else
    z = 1.6449;
  const double h = 2.0 / (9.0 * df);
  const double critical = df * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
  return statistic <= critical;
}

bool amplified_accept(const std::function<bool()>& per_round, std::size_t k,
                      AmplifyPolicy policy, Thresholds thresholds) {
  if (k == 0) throw std::invalid_argument("amplified_accept: need at least one round");
  if (policy == AmplifyPolicy::all_rounds) {
    for (std::size_t i = 0; i < k; ++i)
      if (!per_round()) return false;
    return true;
  }
  std::size_t successes = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (per_round()) ++successes;
  return Rational(successes, k) >= thresholds.accept;
}

namespace {

json graph_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [i, j] : g.edges())
    edges.push_back(json::array({Natural(i).to_hex(), Natural(j).to_hex()}));
  return json{{"n", Natural(g.vertex_count()).to_hex()}, {"edges", edges}};
}

json permutation_json(const Permutation& pi) {
  json out = json::array();
  for (std::size_t v : pi.mapping()) out.push_back(Natural(v).to_hex());
  return out;
}

}  // namespace

json json_triple(const GmwTriple& t, bool verdict) {
  return json{{"commitment", graph_json(t.commitment)},
              {"challenge", Natural(static_cast<std::uint64_t>(t.challenge)).to_hex()},
              {"response", permutation_json(t.response)},
              {"verdict", verdict}};
}

json json_triple(const FsTriple& t, bool verdict) {
  return json{{"commitment", t.x.to_hex()},
              {"challenge", Natural(static_cast<std::uint64_t>(t.challenge)).to_hex()},
              {"response", t.y.to_hex()},
              {"verdict", verdict}};
}

json json_triple(const GniTriple& t, bool verdict) {
  return json{{"commitment", graph_json(t.commitment)},
              {"challenge", Natural(static_cast<std::uint64_t>(t.challenge)).to_hex()},
              {"response", Natural(static_cast<std::uint64_t>(t.response)).to_hex()},
              {"verdict", verdict}};
}

}  // namespace workbench::zkp

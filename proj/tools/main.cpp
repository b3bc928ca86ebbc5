// Command-line front door: cipher demos, the secrecy analyzer, RSA and its
// attack suite, protocol runs with transcripts, zero-knowledge experiments,
// and the associativity checkers. Every randomized subcommand takes an
// explicit seed (flag or WORKBENCH_SEED) so identical invocations produce
// identical bytes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "workbench/aowf.hpp"
#include "workbench/attacks.hpp"
#include "workbench/classical.hpp"
#include "workbench/errors.hpp"
#include "workbench/graphs.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/protocols.hpp"
#include "workbench/rng.hpp"
#include "workbench/rsa.hpp"
#include "workbench/transcript.hpp"
#include "workbench/zkp.hpp"

using namespace workbench;
using nlohmann::json;
namespace nt = workbench::numtheory;
namespace cls = workbench::classical;
namespace atk = workbench::attacks;
namespace proto = workbench::protocols;
namespace ao = workbench::aowf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailedResult = 3;  // attack found nothing / verification false

struct SeedOption {
  std::optional<std::uint64_t> value;

  std::uint64_t require() const {
    if (value) return *value;
    if (const char* env = std::getenv("WORKBENCH_SEED")) return Natural::from_dec(env).to_u64();
    throw std::invalid_argument("--seed is required (or set WORKBENCH_SEED)");
  }
};

void add_seed(CLI::App* cmd, SeedOption& seed) {
  cmd->add_option("--seed", seed.value, "64-bit seed for the deterministic random source");
}

Natural natural_arg(const std::string& text) { return Natural::from_dec(text); }

void emit_json(const json& j) { std::cout << j.dump() << "\n"; }

void emit_transcript(const proto::Transcript& t, const std::string& out_path) {
  if (out_path.empty())
    std::cout << t.to_jsonl();
  else
    proto::write_transcript(t, out_path);
}

json attack_report(bool succeeded, json recovered, std::uint64_t work) {
  json j;
  j["succeeded"] = succeeded;
  if (!recovered.is_null()) j["recovered"] = std::move(recovered);
  j["work"] = proto::json_count(work);
  return j;
}

rsa::RsaPublicKey load_public_key(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open public key file '" + path + "'");
  std::string line;
  std::getline(in, line);
  return rsa::parse_public_key(line);
}

rsa::RsaPrivateKey load_private_key(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open private key file '" + path + "'");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("rsa-priv", 0) == 0) return rsa::parse_private_key(line);
  throw std::invalid_argument("no rsa-priv line in '" + path + "'");
}

graphs::Graph named_graph(const std::string& name) {
  if (name == "k3") return graphs::Graph::complete(3);
  if (name == "p3") return graphs::Graph::path(3);
  if (name == "c5") return graphs::Graph::cycle(5);
  throw std::invalid_argument("unknown graph fixture '" + name + "' (want k3, p3, or c5)");
}

// --- classical ---

void setup_classical(CLI::App& app, int& rc) {
  auto* classical = app.add_subcommand("classical", "classical ciphers over A-Z");
  classical->require_subcommand(1);

  {
    auto* caesar = classical->add_subcommand("caesar", "shift cipher");
    auto key = std::make_shared<unsigned>(0);
    auto enc = std::make_shared<std::string>();
    auto dec = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    caesar->add_option("--key", *key, "shift in [0, 25]")->required();
    auto* enc_opt = caesar->add_option("--encrypt", *enc, "plaintext letters");
    caesar->add_option("--decrypt", *dec, "ciphertext letters")->excludes(enc_opt);
    caesar->add_flag("--json", *as_json, "wrap the result in a JSON object");
    caesar->callback([key, enc, dec, as_json, &rc] {
      const bool encrypting = !enc->empty();
      if (!encrypting && dec->empty())
        throw std::invalid_argument("caesar: need --encrypt or --decrypt");
      const auto text = cls::LetterString::parse(encrypting ? *enc : *dec);
      const std::string result =
          cls::caesar(static_cast<std::uint8_t>(*key), text,
                      encrypting ? cls::CipherDir::encrypt : cls::CipherDir::decrypt)
              .str();
      if (*as_json)
        emit_json(json{{"output", result}});
      else
        std::cout << result << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* vig = classical->add_subcommand("vigenere", "repeating-key shift cipher");
    auto key = std::make_shared<std::string>();
    auto enc = std::make_shared<std::string>();
    auto dec = std::make_shared<std::string>();
    auto as_json = std::make_shared<bool>(false);
    vig->add_option("--key", *key, "key letters")->required();
    auto* enc_opt = vig->add_option("--encrypt", *enc, "plaintext letters");
    vig->add_option("--decrypt", *dec, "ciphertext letters")->excludes(enc_opt);
    vig->add_flag("--json", *as_json, "wrap the result in a JSON object");
    vig->callback([key, enc, dec, as_json, &rc] {
      const bool encrypting = !enc->empty();
      if (!encrypting && dec->empty())
        throw std::invalid_argument("vigenere: need --encrypt or --decrypt");
      const auto text = cls::LetterString::parse(encrypting ? *enc : *dec);
      const std::string result =
          cls::vigenere(cls::LetterString::parse(*key), text,
                        encrypting ? cls::CipherDir::encrypt : cls::CipherDir::decrypt)
              .str();
      if (*as_json)
        emit_json(json{{"output", result}});
      else
        std::cout << result << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* hill = classical->add_subcommand("hill", "linear block cipher mod 26");
    auto dim = std::make_shared<std::size_t>(2);
    auto entries = std::make_shared<std::vector<unsigned>>();
    auto enc = std::make_shared<std::string>();
    auto dec = std::make_shared<std::string>();
    hill->add_option("--dim", *dim, "block size n")->required();
    hill->add_option("--key", *entries, "n*n matrix entries, row-major")->required();
    auto* enc_opt = hill->add_option("--encrypt", *enc, "plaintext letters");
    hill->add_option("--decrypt", *dec, "ciphertext letters")->excludes(enc_opt);
    hill->callback([dim, entries, enc, dec, &rc] {
      const bool encrypting = !enc->empty();
      if (!encrypting && dec->empty())
        throw std::invalid_argument("hill: need --encrypt or --decrypt");
      const std::vector<std::uint8_t> bytes(entries->begin(), entries->end());
      const cls::HillKey key(*dim, bytes);
      const auto text = cls::LetterString::parse(encrypting ? *enc : *dec);
      std::cout << cls::hill(key, text,
                             encrypting ? cls::CipherDir::encrypt : cls::CipherDir::decrypt)
                       .str()
                << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* otp = classical->add_subcommand("otp", "bitwise one-time pad");
    auto key = std::make_shared<std::string>();
    auto data = std::make_shared<std::string>();
    otp->add_option("--key", *key, "key bits")->required();
    otp->add_option("--data", *data, "data bits")->required();
    otp->callback([key, data, &rc] {
      std::cout << cls::format_bits(
                       cls::one_time_pad(cls::parse_bits(*key), cls::parse_bits(*data)))
                << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* freq = classical->add_subcommand("freq", "letter frequency count");
    auto text = std::make_shared<std::string>();
    freq->add_option("--text", *text, "letters to count")->required();
    freq->callback([text, &rc] {
      json j = json::object();
      for (const auto& [letter, share] : cls::frequency_count(cls::LetterString::parse(*text)))
        j[std::string(1, letter)] = proto::json_rational(share);
      emit_json(j);
      rc = kExitOk;
    });
  }
}

// --- analyze ---

void setup_analyze(CLI::App& app, int& rc) {
  auto* analyze = app.add_subcommand("analyze", "finite-cryptosystem secrecy analyzer");
  auto path = std::make_shared<std::string>();
  auto posterior_pair = std::make_shared<std::vector<std::string>>();
  analyze->add_option("--system", *path, "system table file")->required();
  analyze
      ->add_option("--posterior", *posterior_pair,
                   "plaintext and ciphertext symbols: report Pr(p | c) only")
      ->expected(2);
  analyze->callback([path, posterior_pair, &rc] {
    std::ifstream in(*path);
    if (!in) throw std::invalid_argument("cannot open system file '" + *path + "'");
    const auto sys = cls::FiniteCryptosystem::load(in);

    if (!posterior_pair->empty()) {
      const std::size_t p = sys.plaintext_index((*posterior_pair)[0]);
      const std::size_t c = sys.ciphertext_index((*posterior_pair)[1]);
      emit_json(json{{"posterior", proto::json_rational(cls::posterior(sys, p, c))}});
      rc = kExitOk;
      return;
    }

    json report;
    json ciphertext_probs = json::object();
    for (std::size_t c = 0; c < sys.ciphertexts.size(); ++c)
      ciphertext_probs[sys.ciphertexts[c]] =
          proto::json_rational(cls::ciphertext_probability(sys, c));
    report["ciphertext_probabilities"] = ciphertext_probs;

    json posteriors = json::object();
    for (std::size_t c = 0; c < sys.ciphertexts.size(); ++c) {
      if (cls::ciphertext_probability(sys, c) == 0) continue;
      json column = json::object();
      for (std::size_t p = 0; p < sys.plaintexts.size(); ++p)
        column[sys.plaintexts[p]] = proto::json_rational(cls::posterior(sys, p, c));
      posteriors[sys.ciphertexts[c]] = column;
    }
    report["posteriors"] = posteriors;

    const auto verdict = cls::is_perfectly_secret(sys);
    report["perfectly_secret"] = verdict.perfectly_secret;
    if (verdict.witness)
      report["witness"] = json{{"plaintext", sys.plaintexts[verdict.witness->first]},
                               {"ciphertext", sys.ciphertexts[verdict.witness->second]}};
    if (sys.ciphertexts.size() == sys.keys.size()) {
      const auto cond = cls::shannon_conditions(sys);
      report["shannon"] = json{{"uniform_keys", cond.uniform_keys},
                               {"unique_key_per_pair", cond.unique_key_per_pair}};
    }
    emit_json(report);
    rc = kExitOk;
  });
}

// --- rsa ---

void setup_rsa(CLI::App& app, int& rc) {
  auto* rsa_cmd = app.add_subcommand("rsa", "textbook RSA keygen, encryption, signatures");
  rsa_cmd->require_subcommand(1);

  {
    auto* keygen = rsa_cmd->add_subcommand("keygen", "generate a key pair");
    auto bits = std::make_shared<std::size_t>(0);
    auto p = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto e = std::make_shared<std::string>();
    auto out_prefix = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    keygen->add_option("--bits", *bits, "modulus size for random generation");
    keygen->add_option("--p", *p, "fixed prime p");
    keygen->add_option("--q", *q, "fixed prime q");
    keygen->add_option("--e", *e, "public exponent (default: smallest usable)");
    keygen->add_option("--out", *out_prefix, "write <prefix>.pub and <prefix>.priv");
    add_seed(keygen, *seed);
    keygen->callback([bits, p, q, e, out_prefix, seed, &rc] {
      std::optional<Natural> exponent;
      if (!e->empty()) exponent = natural_arg(*e);
      rsa::RsaKeyPair kp;
      if (!p->empty() || !q->empty()) {
        if (p->empty() || q->empty())
          throw std::invalid_argument("rsa keygen: --p and --q go together");
        kp = rsa::keypair_from_primes(natural_arg(*p), natural_arg(*q), exponent);
      } else {
        if (*bits == 0) throw std::invalid_argument("rsa keygen: need --bits or --p/--q");
        Rng rng(seed->require());
        kp = rsa::rsa_keygen(*bits, exponent, rng);
      }
      const Natural phi = (kp.priv.p - Natural(1)) * (kp.priv.q - Natural(1));
      std::cout << "n=" << kp.pub.n.to_hex() << " phi=" << phi.to_hex()
                << " e=" << kp.pub.e.to_hex() << " d=" << kp.priv.d.to_hex()
                << " (d=" << kp.priv.d.to_dec() << ")\n";
      std::cout << rsa::format_public_key(kp.pub) << "\n";
      std::cout << rsa::format_private_key(kp.priv) << "\n";
      if (!out_prefix->empty()) {
        std::ofstream pub(*out_prefix + ".pub");
        pub << rsa::format_public_key(kp.pub) << "\n";
        std::ofstream priv(*out_prefix + ".priv");
        priv << rsa::format_private_key(kp.priv) << "\n";
      }
      rc = kExitOk;
    });
  }

  {
    auto* encrypt = rsa_cmd->add_subcommand("encrypt", "m^e mod n");
    auto key = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    auto pad = std::make_shared<bool>(false);
    auto seed = std::make_shared<SeedOption>();
    encrypt->add_option("--key", *key, "public key file")->required();
    encrypt->add_option("--m", *m, "message integer")->required();
    encrypt->add_flag("--pad", *pad,
                      "prepend 32 fixed random bits before encrypting (demo countermeasure "
                      "against algebraic attacks on raw RSA)");
    add_seed(encrypt, *seed);
    encrypt->callback([key, m, pad, seed, &rc] {
      const auto pk = load_public_key(*key);
      Natural message = natural_arg(*m);
      if (*pad) {
        if (pk.n.bit_length() < 40)
          throw std::invalid_argument("rsa encrypt: modulus too small for --pad");
        const std::size_t payload_bits = pk.n.bit_length() - 1 - 32;
        if (message.bit_length() > payload_bits)
          throw std::invalid_argument("rsa encrypt: message too large for the padded layout");
        Rng rng(seed->require());
        message += rng.bits(32) << payload_bits;
      }
      std::cout << rsa::rsa_encrypt(pk, message).to_hex() << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* decrypt = rsa_cmd->add_subcommand("decrypt", "c^d mod n");
    auto key = std::make_shared<std::string>();
    auto c = std::make_shared<std::string>();
    auto crt = std::make_shared<bool>(false);
    auto pad = std::make_shared<bool>(false);
    decrypt->add_option("--key", *key, "private key file")->required();
    decrypt->add_option("--c", *c, "ciphertext integer")->required();
    decrypt->add_flag("--crt", *crt, "decrypt through the prime factors");
    decrypt->add_flag("--pad", *pad, "strip the 32 random bits added by encrypt --pad");
    decrypt->callback([key, c, crt, pad, &rc] {
      const auto sk = load_private_key(*key);
      const Natural ct = natural_arg(*c);
      Natural m = *crt ? rsa::rsa_decrypt_crt(sk, ct) : rsa::rsa_decrypt(sk, ct);
      if (*pad) {
        if (sk.n.bit_length() < 40)
          throw std::invalid_argument("rsa decrypt: modulus too small for --pad");
        const std::size_t payload_bits = sk.n.bit_length() - 1 - 32;
        m %= Natural(1) << payload_bits;
      }
      std::cout << m.to_hex() << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* sign = rsa_cmd->add_subcommand("sign", "m^d mod n");
    auto key = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    sign->add_option("--key", *key, "private key file")->required();
    sign->add_option("--m", *m, "message integer")->required();
    sign->callback([key, m, &rc] {
      std::cout << rsa::rsa_sign(load_private_key(*key), natural_arg(*m)).to_hex() << "\n";
      rc = kExitOk;
    });
  }

  {
    auto* verify = rsa_cmd->add_subcommand("verify", "check sig^e = m mod n");
    auto key = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    auto sig = std::make_shared<std::string>();
    verify->add_option("--key", *key, "public key file")->required();
    verify->add_option("--m", *m, "message integer")->required();
    verify->add_option("--sig", *sig, "signature integer")->required();
    verify->callback([key, m, sig, &rc] {
      const bool ok = rsa::rsa_verify(load_public_key(*key), natural_arg(*m), natural_arg(*sig));
      emit_json(json{{"verified", ok}});
      rc = ok ? kExitOk : kExitFailedResult;
    });
  }
}

// --- attack ---

void setup_attack(CLI::App& app, int& rc) {
  auto* attack = app.add_subcommand("attack", "cryptanalysis toolkit; JSON report per run");
  attack->require_subcommand(1);

  {
    auto* td = attack->add_subcommand("trial-division", "exhaustive factor search");
    auto n = std::make_shared<std::string>();
    auto bound = std::make_shared<std::string>();
    td->add_option("--n", *n, "modulus")->required();
    td->add_option("--bound", *bound, "search bound (default sqrt(n))");
    td->callback([n, bound, &rc] {
      atk::AttackStats stats;
      std::optional<Natural> b;
      if (!bound->empty()) b = natural_arg(*bound);
      const auto split = atk::trial_division(natural_arg(*n), b, &stats);
      json rec;
      if (split) rec = json{{"p", split->first.to_hex()}, {"q", split->second.to_hex()}};
      emit_json(attack_report(split.has_value(), rec, stats.work));
      rc = split ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* pm1 = attack->add_subcommand("pollard-pm1", "smooth p-1 factoring");
    auto n = std::make_shared<std::string>();
    auto bound = std::make_shared<std::string>();
    pm1->add_option("--n", *n, "odd composite")->required();
    pm1->add_option("--bound", *bound, "smoothness bound")->required();
    pm1->callback([n, bound, &rc] {
      atk::AttackStats stats;
      const auto factor = atk::pollard_pm1(natural_arg(*n), natural_arg(*bound), &stats);
      json rec;
      if (factor) rec = json{{"factor", factor->to_hex()}};
      emit_json(attack_report(factor.has_value(), rec, stats.work));
      rc = factor ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* squares = attack->add_subcommand("squares", "congruence-of-squares split");
    auto n = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    squares->add_option("--n", *n)->required();
    squares->add_option("--a", *a)->required();
    squares->add_option("--b", *b)->required();
    squares->callback([n, a, b, &rc] {
      const auto factor =
          atk::congruence_of_squares_factor(natural_arg(*n), natural_arg(*a), natural_arg(*b));
      json rec;
      if (factor) rec = json{{"factor", factor->to_hex()}};
      emit_json(attack_report(factor.has_value(), rec, 1));
      rc = factor ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* wiener = attack->add_subcommand("wiener", "small-d continued fraction recovery");
    auto n = std::make_shared<std::string>();
    auto e = std::make_shared<std::string>();
    wiener->add_option("--n", *n)->required();
    wiener->add_option("--e", *e)->required();
    wiener->callback([n, e, &rc] {
      atk::AttackStats stats;
      const auto key =
          atk::wiener_attack(rsa::RsaPublicKey{natural_arg(*n), natural_arg(*e)}, &stats);
      json rec;
      if (key) rec = json{{"d", key->d.to_hex()}, {"p", key->p.to_hex()}, {"q", key->q.to_hex()}};
      emit_json(attack_report(key.has_value(), rec, stats.work));
      rc = key ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* bc = attack->add_subcommand("broadcast", "same message under three e=3 keys");
    auto cts = std::make_shared<std::vector<std::string>>();
    auto mods = std::make_shared<std::vector<std::string>>();
    bc->add_option("--c", *cts, "three ciphertexts")->expected(3)->required();
    bc->add_option("--n", *mods, "three pairwise-coprime moduli")->expected(3)->required();
    bc->callback([cts, mods, &rc] {
      std::vector<Natural> c, n;
      for (const auto& s : *cts) c.push_back(natural_arg(s));
      for (const auto& s : *mods) n.push_back(natural_arg(s));
      const auto m = atk::broadcast_attack_e3(c, n);
      json rec;
      if (m) rec = json{{"m", m->to_hex()}};
      emit_json(attack_report(m.has_value(), rec, 1));
      rc = m ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* forge = attack->add_subcommand("forge", "homomorphic signature forgery");
    auto key = std::make_shared<std::string>();
    auto pairs = std::make_shared<std::vector<std::string>>();
    auto exps = std::make_shared<std::vector<std::int64_t>>();
    auto r = std::make_shared<std::string>("1");
    forge->add_option("--key", *key, "public key file")->required();
    forge->add_option("--pair", *pairs, "known m:sig pair (repeatable)");
    forge->add_option("--exp", *exps, "exponent per pair (repeatable)");
    forge->add_option("--r", *r, "free factor (default 1)");
    forge->callback([key, pairs, exps, r, &rc] {
      const auto pk = load_public_key(*key);
      std::vector<std::pair<Natural, Natural>> known;
      for (const auto& item : *pairs) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("--pair wants m:sig, got '" + item + "'");
        known.emplace_back(natural_arg(item.substr(0, colon)),
                           natural_arg(item.substr(colon + 1)));
      }
      std::vector<Integer> exponents;
      for (std::int64_t v : *exps) exponents.emplace_back(v);
      if (exponents.empty()) exponents.assign(known.size(), Integer(1));
      const auto forged = atk::forge_signature(pk, known, exponents, natural_arg(*r));
      emit_json(
          attack_report(true, json{{"m", forged.m.to_hex()}, {"sig", forged.sig.to_hex()}}, 1));
      rc = kExitOk;
    });
  }

  {
    auto* blind = attack->add_subcommand("blinding", "chosen-ciphertext unblinding demo");
    auto pub = std::make_shared<std::string>();
    auto priv = std::make_shared<std::string>();
    auto c = std::make_shared<std::string>();
    auto r = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    blind->add_option("--pub", *pub, "public key file")->required();
    blind->add_option("--oracle-key", *priv, "private key file standing in for the oracle")
        ->required();
    blind->add_option("--c", *c, "target ciphertext")->required();
    blind->add_option("--r", *r, "blinding factor (default: drawn from seed)");
    add_seed(blind, *seed);
    blind->callback([pub, priv, c, r, seed, &rc] {
      const auto pk = load_public_key(*pub);
      const auto sk = load_private_key(*priv);
      Rng rng(r->empty() ? seed->require() : 0);
      std::optional<Natural> blind_factor;
      if (!r->empty()) blind_factor = natural_arg(*r);
      const Natural m = atk::blinding_attack(
          pk, [&sk](const Natural& ct) { return rsa::rsa_decrypt(sk, ct); }, natural_arg(*c),
          blind_factor, rng);
      emit_json(attack_report(true, json{{"m", m.to_hex()}}, 1));
      rc = kExitOk;
    });
  }

  {
    auto* super = attack->add_subcommand("superencryption", "cycle back to the ciphertext");
    auto n = std::make_shared<std::string>();
    auto e = std::make_shared<std::string>();
    auto c = std::make_shared<std::string>();
    auto max_iters = std::make_shared<std::uint64_t>(1u << 20);
    super->add_option("--n", *n)->required();
    super->add_option("--e", *e)->required();
    super->add_option("--c", *c)->required();
    super->add_option("--max-iters", *max_iters, "iteration budget");
    super->callback([n, e, c, max_iters, &rc] {
      atk::AttackStats stats;
      const auto cyc =
          atk::superencryption_cycle(rsa::RsaPublicKey{natural_arg(*n), natural_arg(*e)},
                                     natural_arg(*c), *max_iters, &stats);
      json rec;
      if (cyc)
        rec = json{{"cycle_length", proto::json_count(cyc->length)},
                   {"plaintext", cyc->preimage.to_hex()}};
      emit_json(attack_report(cyc.has_value(), rec, stats.work));
      rc = cyc ? kExitOk : kExitFailedResult;
    });
  }
}

// --- protocol ---

void setup_protocol(CLI::App& app, int& rc) {
  auto* protocol = app.add_subcommand("protocol", "two-party protocol runs with transcripts");
  protocol->require_subcommand(1);

  {
    auto* cmd = protocol->add_subcommand("dh", "Diffie-Hellman key agreement");
    auto bits = std::make_shared<std::size_t>(32);
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--bits", *bits, "group size for generated parameters");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([bits, out_path, seed, &rc] {
      Rng rng(seed->require());
      const proto::DhParams params = proto::make_dh_params(*bits, rng);
      const Natural a = rng.range(Natural(1), params.p - Natural(2));
      const Natural b = rng.range(Natural(1), params.p - Natural(2));
      proto::DhRun run = proto::dh_keyagree(params, a, b);
      run.transcript.seed = seed->require();
      emit_transcript(run.transcript, *out_path);
      rc = run.alice_key == run.bob_key ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd = protocol->add_subcommand("dh-mitm", "key agreement with an active interceptor");
    auto bits = std::make_shared<std::size_t>(32);
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--bits", *bits, "group size for generated parameters");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([bits, out_path, seed, &rc] {
      Rng rng(seed->require());
      const proto::DhParams params = proto::make_dh_params(*bits, rng);
      const Natural a = rng.range(Natural(1), params.p - Natural(2));
      const Natural b = rng.range(Natural(1), params.p - Natural(2));
      const Natural e1 = rng.range(Natural(1), params.p - Natural(2));
      const Natural e2 = rng.range(Natural(1), params.p - Natural(2));
      proto::MitmRun run = proto::dh_mitm(params, a, b, e1, e2);
      run.transcript.seed = seed->require();
      emit_transcript(run.transcript, *out_path);
      const bool attack_works =
          run.alice_key == run.erich_alice_key && run.bob_key == run.erich_bob_key;
      rc = attack_works ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd =
        protocol->add_subcommand("hybrid-dh", "predistributed key plus symmetric encryption");
    auto bits = std::make_shared<std::size_t>(32);
    auto message = std::make_shared<std::string>("HELLO");
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--bits", *bits, "group size for generated parameters");
    cmd->add_option("--message", *message, "letters to send");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([bits, message, out_path, seed, &rc] {
      Rng rng(seed->require());
      const proto::DhParams params = proto::make_dh_params(*bits, rng);
      const Natural b = rng.range(Natural(1), params.p - Natural(2));
      const Natural a = rng.range(Natural(1), params.p - Natural(2));
      proto::HybridDhRun run = proto::hybrid_dh(params, b, a, cls::LetterString::parse(*message));
      run.transcript.seed = seed->require();
      emit_transcript(run.transcript, *out_path);
      rc = run.recovered.str() == *message ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd = protocol->add_subcommand("elgamal", "multiplicative-mask public-key encryption");
    auto bits = std::make_shared<std::size_t>(32);
    auto m = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--bits", *bits, "group size for generated parameters");
    cmd->add_option("--m", *m, "message in [1, p-1] (default: drawn from seed)");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([bits, m, out_path, seed, &rc] {
      Rng rng(seed->require());
      const proto::DhParams params = proto::make_dh_params(*bits, rng);
      const Natural b = rng.range(Natural(1), params.p - Natural(2));
      Natural a;
      do {
        a = rng.range(Natural(1), params.p - Natural(2));
      } while (gcd(a, params.p - Natural(1)) != 1);
      const Natural msg = m->empty() ? rng.range(Natural(1), params.p - Natural(1))
                                     : natural_arg(*m);
      proto::ElGamalRun run = proto::elgamal_session(params, b, a, msg);
      run.transcript.seed = seed->require();
      emit_transcript(run.transcript, *out_path);
      rc = run.recovered == msg ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd =
        protocol->add_subcommand("elgamal-sign", "discrete-log signature with verification");
    auto bits = std::make_shared<std::size_t>(32);
    auto m = std::make_shared<std::string>("74");
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--bits", *bits, "group size for generated parameters");
    cmd->add_option("--m", *m, "message integer");
    add_seed(cmd, *seed);
    cmd->callback([bits, m, seed, &rc] {
      Rng rng(seed->require());
      const proto::DhParams params = proto::make_dh_params(*bits, rng);
      const Natural b = rng.range(Natural(1), params.p - Natural(2));
      Natural r;
      do {
        r = rng.range(Natural(1), params.p - Natural(2));
      } while (gcd(r, params.p - Natural(1)) != 1);
      const Natural msg = natural_arg(*m);
      const proto::ElGamalSignature sig = proto::elgamal_sign(params, b, r, msg);
      const bool ok = proto::elgamal_verify(params, sig.beta, msg, sig.rho, sig.s);
      emit_json(json{{"p", params.p.to_hex()},
                     {"g", params.g.to_hex()},
                     {"beta", sig.beta.to_hex()},
                     {"rho", sig.rho.to_hex()},
                     {"s", sig.s.to_hex()},
                     {"verified", ok}});
      rc = ok ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd = protocol->add_subcommand("shamir", "no-key three-pass exchange");
    auto bits = std::make_shared<std::size_t>(32);
    auto m = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--bits", *bits, "prime size");
    cmd->add_option("--m", *m, "message (default: drawn from seed)");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([bits, m, out_path, seed, &rc] {
      Rng rng(seed->require());
      const Natural p = nt::gen_prime(*bits, rng);
      auto draw_unit = [&] {
        for (;;) {
          const Natural v = rng.range(Natural(1), p - Natural(2));
          if (gcd(v, p - Natural(1)) == 1) return v;
        }
      };
      const Natural a = draw_unit();
      const Natural b = draw_unit();
      const Natural msg = m->empty() ? rng.range(Natural(1), p - Natural(1)) : natural_arg(*m);
      proto::ShamirRun run = proto::shamir_no_key(p, a, b, msg);
      run.transcript.seed = seed->require();
      emit_transcript(run.transcript, *out_path);
      rc = run.recovered == msg ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd = protocol->add_subcommand("rivest-sherman",
                                         "key agreement over an associative two-ary function");
    auto sigma_name = std::make_shared<std::string>("add");
    auto graph_name = std::make_shared<std::string>("k3");
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--sigma", *sigma_name, "add | cert");
    cmd->add_option("--graph", *graph_name, "certificate instance for --sigma cert");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([sigma_name, graph_name, out_path, seed, &rc] {
      Rng rng(seed->require());
      proto::RivestShermanRun run;
      if (*sigma_name == "add") {
        const ao::PartialFn sigma =
            ao::as_partial([](const Natural& a, const Natural& b) { return a + b; });
        run = proto::rivest_sherman_keyagree(sigma, rng.bits(32), rng.bits(32), rng.bits(32));
      } else if (*sigma_name == "cert") {
        const graphs::Graph g = named_graph(*graph_name);
        const Natural inst = ao::encode_graph(g);
        const auto colorings = graphs::enumerate_3colorings(g);
        auto draw = [&] {
          return ao::pair(
              inst, ao::encode_certificate(inst, colorings[rng.below_u64(colorings.size())]));
        };
        run = proto::rivest_sherman_keyagree(ao::as_partial(ao::totalize(ao::sigma_cert)),
                                             draw(), draw(), draw());
      } else {
        throw std::invalid_argument("unknown sigma '" + *sigma_name + "' (want add or cert)");
      }
      run.transcript.seed = seed->require();
      emit_transcript(run.transcript, *out_path);
      rc = run.agreed ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* cmd = protocol->add_subcommand("rabi-sherman",
                                         "signatures over an associative two-ary function");
    auto sigma_name = std::make_shared<std::string>("add");
    auto graph_name = std::make_shared<std::string>("k3");
    auto out_path = std::make_shared<std::string>();
    auto seed = std::make_shared<SeedOption>();
    cmd->add_option("--sigma", *sigma_name, "add | cert");
    cmd->add_option("--graph", *graph_name, "certificate instance for --sigma cert");
    cmd->add_option("--out", *out_path, "write the transcript here instead of stdout");
    add_seed(cmd, *seed);
    cmd->callback([sigma_name, graph_name, out_path, seed, &rc] {
      Rng rng(seed->require());
      ao::PartialFn sigma;
      Natural x, y, m;
      if (*sigma_name == "add") {
        sigma = ao::as_partial([](const Natural& a, const Natural& b) { return a + b; });
        x = rng.bits(32);
        y = rng.bits(32);
        m = rng.bits(32);
      } else if (*sigma_name == "cert") {
        const graphs::Graph g = named_graph(*graph_name);
        const Natural inst = ao::encode_graph(g);
        const auto colorings = graphs::enumerate_3colorings(g);
        auto draw = [&] {
          return ao::pair(
              inst, ao::encode_certificate(inst, colorings[rng.below_u64(colorings.size())]));
        };
        sigma = ao::sigma_cert;
        x = draw();
        y = draw();
        m = draw();
      } else {
        throw std::invalid_argument("unknown sigma '" + *sigma_name + "' (want add or cert)");
      }
      proto::RabiShermanSigned signed_msg = proto::rabi_sherman_sign(sigma, x, y, m);
      const bool ok = proto::rabi_sherman_verify(sigma, signed_msg.pub, m, signed_msg.signature);
      signed_msg.transcript.seed = seed->require();
      signed_msg.transcript.outputs["bob"] = json{{"verified", ok}};
      emit_transcript(signed_msg.transcript, *out_path);
      rc = ok ? kExitOk : kExitFailedResult;
    });
  }
}

// --- zk ---

void emit_zk_summary(std::size_t accepted_rounds, std::size_t rounds, std::uint64_t seed,
                     bool accept) {
  emit_json(json{{"accept", accept},
                 {"accept_rate", proto::json_rational(Rational(accepted_rounds, rounds))},
                 {"rounds", proto::json_count(rounds)},
                 {"seed", proto::json_count(seed)}});
}

void setup_zk(CLI::App& app, int& rc) {
  auto* zk = app.add_subcommand("zk", "interactive-proof experiments; JSON lines per round");
  zk->require_subcommand(1);

  {
    auto* gmw = zk->add_subcommand("gmw", "graph-isomorphism identification");
    auto vertices = std::make_shared<std::size_t>(6);
    auto rounds = std::make_shared<std::size_t>(20);
    auto impostor = std::make_shared<bool>(false);
    auto seed = std::make_shared<SeedOption>();
    gmw->add_option("--vertices", *vertices, "graph size");
    gmw->add_option("--rounds", *rounds, "rounds to run");
    gmw->add_flag("--impostor", *impostor, "prover without the secret");
    add_seed(gmw, *seed);
    gmw->callback([vertices, rounds, impostor, seed, &rc] {
      Rng rng(seed->require());
      const zkp::GmwKeys keys = zkp::gmw_keygen(*vertices, rng);
      std::size_t accepted = 0;
      for (std::size_t i = 0; i < *rounds; ++i) {
        const auto r =
            zkp::gmw_round(keys.pub, *impostor ? std::nullopt : std::optional(keys.secret), rng);
        json line = zkp::json_triple(r.triple, r.verdict);
        line["round"] = proto::json_count(i + 1);
        emit_json(line);
        if (r.verdict) ++accepted;
      }
      const bool accept = accepted == *rounds;
      emit_zk_summary(accepted, *rounds, seed->require(), accept);
      rc = accept ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* gni = zk->add_subcommand("gni", "graph non-isomorphism rounds");
    auto vertices = std::make_shared<std::size_t>(4);
    auto rounds = std::make_shared<std::size_t>(10);
    auto isomorphic = std::make_shared<bool>(false);
    auto seed = std::make_shared<SeedOption>();
    gni->add_option("--vertices", *vertices, "graph size");
    gni->add_option("--rounds", *rounds, "rounds to run");
    gni->add_flag("--isomorphic", *isomorphic,
                  "use an isomorphic pair (any prover is reduced to guessing)");
    add_seed(gni, *seed);
    gni->callback([vertices, rounds, isomorphic, seed, &rc] {
      Rng rng(seed->require());
      const graphs::Graph g1 = graphs::Graph::path(*vertices);
      const graphs::Graph g2 =
          *isomorphic
              ? graphs::apply_permutation(graphs::random_permutation(*vertices, rng), g1)
              : graphs::Graph::star(*vertices);
      const zkp::GniOutcome outcome =
          zkp::gni_protocol(g1, g2, *rounds, zkp::GniProver::honest, rng);
      std::size_t accepted = 0;
      for (std::size_t i = 0; i < outcome.rounds.size(); ++i) {
        json line = zkp::json_triple(outcome.rounds[i].triple, outcome.rounds[i].verdict);
        line["round"] = proto::json_count(i + 1);
        emit_json(line);
        if (outcome.rounds[i].verdict) ++accepted;
      }
      emit_zk_summary(accepted, *rounds, seed->require(), outcome.accepted);
      rc = outcome.accepted ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* fs = zk->add_subcommand("fs", "square-root identification");
    auto bits = std::make_shared<std::size_t>(24);
    auto rounds = std::make_shared<std::size_t>(20);
    auto impostor = std::make_shared<bool>(false);
    auto strict = std::make_shared<bool>(true);
    auto seed = std::make_shared<SeedOption>();
    fs->add_option("--bits", *bits, "modulus size");
    fs->add_option("--rounds", *rounds, "rounds to run");
    fs->add_flag("--impostor", *impostor, "prover without the secret");
    fs->add_flag("--strict,!--no-strict", *strict, "reject zero commitments (default on)");
    add_seed(fs, *seed);
    fs->callback([bits, rounds, impostor, strict, seed, &rc] {
      Rng rng(seed->require());
      const zkp::FsKeys keys = zkp::fs_keygen(*bits, rng);
      const zkp::FsPublic pub{keys.n, keys.v};
      std::size_t accepted = 0;
      for (std::size_t i = 0; i < *rounds; ++i) {
        const auto r = zkp::fs_round(
            pub, *impostor ? zkp::FsResponder::impostor() : zkp::FsResponder::knower(keys.s),
            rng, *strict);
        json line = zkp::json_triple(r.triple, r.verdict);
        line["round"] = proto::json_count(i + 1);
        emit_json(line);
        if (r.verdict) ++accepted;
      }
      const bool accept = accepted == *rounds;
      emit_zk_summary(accepted, *rounds, seed->require(), accept);
      rc = accept ? kExitOk : kExitFailedResult;
    });
  }

  {
    auto* sim = zk->add_subcommand("simulate", "rejection-sampling simulator rounds");
    auto which = std::make_shared<std::string>("gmw");
    auto vertices = std::make_shared<std::size_t>(6);
    auto bits = std::make_shared<std::size_t>(24);
    auto rounds = std::make_shared<std::size_t>(20);
    auto seed = std::make_shared<SeedOption>();
    sim->add_option("--protocol", *which, "gmw | fs");
    sim->add_option("--vertices", *vertices, "graph size for gmw");
    sim->add_option("--bits", *bits, "modulus size for fs");
    sim->add_option("--rounds", *rounds, "emitted rounds");
    add_seed(sim, *seed);
    sim->callback([which, vertices, bits, rounds, seed, &rc] {
      Rng rng(seed->require());
      std::uint64_t attempts = 0;
      if (*which == "gmw") {
        const zkp::GmwKeys keys = zkp::gmw_keygen(*vertices, rng);
        for (std::size_t i = 0; i < *rounds; ++i) {
          const auto r = zkp::gmw_simulator_round(keys.pub, rng);
          attempts += r.attempts;
          json line = zkp::json_triple(r.triple, zkp::gmw_verify(keys.pub, r.triple));
          line["round"] = proto::json_count(i + 1);
          emit_json(line);
        }
      } else if (*which == "fs") {
        const zkp::FsKeys keys = zkp::fs_keygen(*bits, rng);
        const zkp::FsPublic pub{keys.n, keys.v};
        for (std::size_t i = 0; i < *rounds; ++i) {
          const auto r = zkp::fs_simulator_round(pub, rng);
          attempts += r.attempts;
          json line = zkp::json_triple(r.triple, zkp::fs_verify(pub, r.triple));
          line["round"] = proto::json_count(i + 1);
          emit_json(line);
        }
      } else {
        throw std::invalid_argument("unknown simulator protocol '" + *which + "'");
      }
      emit_json(json{{"attempts", proto::json_count(attempts)},
                     {"rounds", proto::json_count(*rounds)},
                     {"seed", proto::json_count(seed->require())}});
      rc = kExitOk;
    });
  }
}

// --- aowf-check ---

void setup_aowf(CLI::App& app, int& rc) {
  auto* check = app.add_subcommand("aowf-check", "exhaustive two-ary function property checks");
  auto property = std::make_shared<std::string>();
  auto sigma_name = std::make_shared<std::string>("cert");
  auto graph_name = std::make_shared<std::string>("k3");
  auto min_domain = std::make_shared<std::size_t>(30);
  check->add_option("--property", *property, "associative | weakly-associative | commutative")
      ->required();
  check->add_option("--sigma", *sigma_name, "cert | cert-total | add | sub | pairing");
  check->add_option("--graph", *graph_name, "instance for the certificate sigmas");
  check->add_option("--min-domain", *min_domain, "minimum domain size for cert domains");
  check->callback([property, sigma_name, graph_name, min_domain, &rc] {
    ao::PartialFn sigma;
    std::vector<Natural> domain;
    if (*sigma_name == "cert" || *sigma_name == "cert-total") {
      domain = ao::certificate_domain(named_graph(*graph_name), *min_domain);
      sigma = *sigma_name == "cert" ? ao::PartialFn(ao::sigma_cert)
                                    : ao::as_partial(ao::totalize(ao::sigma_cert));
    } else if (*sigma_name == "add") {
      sigma = ao::as_partial([](const Natural& a, const Natural& b) { return a + b; });
      for (std::uint64_t i = 0; i < 30; ++i) domain.emplace_back(i);
    } else if (*sigma_name == "sub") {
      sigma = ao::as_partial(
          [](const Natural& a, const Natural& b) { return a >= b ? a - b : Natural(0); });
      for (std::uint64_t i = 0; i < 30; ++i) domain.emplace_back(i);
    } else if (*sigma_name == "pairing") {
      sigma = ao::as_partial([](const Natural& a, const Natural& b) { return ao::pair(a, b); });
      for (std::uint64_t i = 0; i < 12; ++i) domain.emplace_back(i);
    } else {
      throw std::invalid_argument("unknown sigma '" + *sigma_name + "'");
    }

    ao::CheckResult result;
    if (*property == "associative")
      result = ao::check_associative(sigma, domain);
    else if (*property == "weakly-associative")
      result = ao::check_weakly_associative(sigma, domain);
    else if (*property == "commutative")
      result = ao::check_commutative(sigma, domain);
    else
      throw std::invalid_argument("unknown property '" + *property + "'");

    json j;
    j["property"] = *property;
    j["domain_size"] = proto::json_count(domain.size());
    j["holds"] = result.holds;
    if (!result.holds) {
      json w = json::array();
      for (const Natural& v : result.witness) w.push_back(v.to_hex());
      j["witness"] = w;
    }
    emit_json(j);
    rc = result.holds ? kExitOk : kExitFailedResult;
  });
}

// --- transcript utility ---

void setup_transcript(CLI::App& app, int& rc) {
  auto* tcmd = app.add_subcommand("transcript", "transcript file utilities");
  tcmd->require_subcommand(1);
  auto* echo = tcmd->add_subcommand("echo", "parse a transcript and re-emit it");
  auto in_path = std::make_shared<std::string>();
  auto out_path = std::make_shared<std::string>();
  echo->add_option("--in", *in_path, "transcript file")->required();
  echo->add_option("--out", *out_path, "destination (default stdout)");
  echo->callback([in_path, out_path, &rc] {
    const proto::Transcript t = proto::read_transcript(*in_path);
    if (out_path->empty())
      std::cout << t.to_jsonl();
    else
      proto::write_transcript(t, *out_path);
    rc = kExitOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale cryptographic protocol workbench"};
  app.require_subcommand(1);
  int rc = kExitOk;

  setup_classical(app, rc);
  setup_analyze(app, rc);
  setup_rsa(app, rc);
  setup_attack(app, rc);
  setup_protocol(app, rc);
  setup_zk(app, rc);
  setup_aowf(app, rc);
  setup_transcript(app, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

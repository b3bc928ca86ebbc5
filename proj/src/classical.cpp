#include "workbench/classical.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "workbench/errors.hpp"
#include "workbench/numtheory.hpp"

namespace workbench::classical {

LetterString LetterString::parse(std::string_view text) {
  LetterString out;
  out.letters_.reserve(text.size());
  for (char c : text) {
    if (c < 'A' || c > 'Z')
      throw std::invalid_argument("LetterString: only A-Z allowed, got '" + std::string(1, c) + "'");
    out.letters_.push_back(c);
  }
  return out;
}

LetterString LetterString::from_residues(const std::vector<std::uint8_t>& residues) {
  LetterString out;
  out.letters_.reserve(residues.size());
  for (std::uint8_t r : residues) {
    if (r > 25) throw std::invalid_argument("LetterString: residue out of range");
    out.letters_.push_back(static_cast<char>('A' + r));
  }
  return out;
}

LetterString caesar(std::uint8_t key, const LetterString& text, CipherDir dir) {
  if (key > 25) throw std::invalid_argument("caesar: key must be in [0, 25]");
  std::vector<std::uint8_t> out(text.size());
  const int shift = dir == CipherDir::encrypt ? key : 26 - key;
  for (std::size_t i = 0; i < text.size(); ++i)
    out[i] = static_cast<std::uint8_t>((text.residue(i) + shift) % 26);
  return LetterString::from_residues(out);
}

LetterString vigenere(const LetterString& key, const LetterString& text, CipherDir dir) {
  if (key.empty()) throw std::invalid_argument("vigenere: key must be nonempty");
  std::vector<std::uint8_t> out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int k = key.residue(i % key.size());
    const int shift = dir == CipherDir::encrypt ? k : 26 - k;
    out[i] = static_cast<std::uint8_t>((text.residue(i) + shift) % 26);
  }
  return LetterString::from_residues(out);
}

namespace {

// Determinant of a signed matrix by cofactor expansion; desk-scale n.
long long det_signed(const std::vector<long long>& m, std::size_t n) {
  if (n == 1) return m[0];
  long long det = 0;
  long long sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<long long> minor;
    minor.reserve((n - 1) * (n - 1));
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) minor.push_back(m[r * n + c]);
    det += sign * m[col] * det_signed(minor, n - 1);
    sign = -sign;
  }
  return det;
}

std::uint8_t mod26(long long v) {
  long long r = v % 26;
  if (r < 0) r += 26;
  return static_cast<std::uint8_t>(r);
}

}  // namespace

HillKey::HillKey(std::size_t dimension, std::vector<std::uint8_t> entries)
    : dim_(dimension), entries_(std::move(entries)) {
  if (dim_ == 0) throw std::invalid_argument("HillKey: dimension must be >= 1");
  if (entries_.size() != dim_ * dim_)
    throw std::invalid_argument("HillKey: need dimension^2 entries");
  for (std::uint8_t& e : entries_) e = static_cast<std::uint8_t>(e % 26);
  std::vector<long long> m(entries_.begin(), entries_.end());
  const std::uint8_t det = mod26(det_signed(m, dim_));
  if (!numtheory::mod_inverse(Natural(det), Natural(26)).has_value())
    throw std::invalid_argument("HillKey: determinant " + std::to_string(det) +
                                " is not invertible mod 26");
}

HillKey HillKey::identity(std::size_t dimension) {
  std::vector<std::uint8_t> entries(dimension * dimension, 0);
  for (std::size_t i = 0; i < dimension; ++i) entries[i * dimension + i] = 1;
  return HillKey(dimension, std::move(entries));
}

HillKey HillKey::inverse() const {
  std::vector<long long> m(entries_.begin(), entries_.end());
  const std::uint8_t det = mod26(det_signed(m, dim_));
  const Natural det_inv = *numtheory::mod_inverse(Natural(det), Natural(26));
  const long long dinv = static_cast<long long>(det_inv.to_u64());

  std::vector<std::uint8_t> inv(dim_ * dim_);
  if (dim_ == 1) {
    inv[0] = mod26(dinv);
    return HillKey(1, std::move(inv));
  }
  // adj(K)[j][i] = (-1)^(i+j) det(minor(i, j)); K^-1 = det^-1 adj(K).
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      std::vector<long long> minor;
      minor.reserve((dim_ - 1) * (dim_ - 1));
      for (std::size_t r = 0; r < dim_; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0; c < dim_; ++c)
          if (c != j) minor.push_back(m[r * dim_ + c]);
      }
      const long long cofactor = ((i + j) % 2 == 0 ? 1 : -1) * det_signed(minor, dim_ - 1);
      inv[j * dim_ + i] = mod26(cofactor * dinv);
    }
  }
  return HillKey(dim_, std::move(inv));
}

LetterString hill(const HillKey& key, const LetterString& text, CipherDir dir) {
  const std::size_t n = key.dimension();
  if (text.size() % n != 0)
    throw std::invalid_argument("hill: text length must be a multiple of the dimension");
  const HillKey effective = dir == CipherDir::encrypt ? key : key.inverse();
  std::vector<std::uint8_t> out(text.size());
  for (std::size_t block = 0; block < text.size(); block += n) {
    for (std::size_t r = 0; r < n; ++r) {
      long long acc = 0;
      for (std::size_t c = 0; c < n; ++c)
        acc += static_cast<long long>(effective.entry(r, c)) * text.residue(block + c);
      out[block + r] = mod26(acc);
    }
  }
  return LetterString::from_residues(out);
}

Bits parse_bits(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bits: only 0/1 allowed");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string format_bits(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

Bits one_time_pad(const Bits& key, const Bits& data) {
  if (key.size() != data.size())
    throw std::invalid_argument("one_time_pad: key and data lengths differ");
  Bits out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = key[i] ^ data[i];
  return out;
}

std::map<char, Rational> frequency_count(const LetterString& text) {
  if (text.empty()) throw std::invalid_argument("frequency_count: empty text");
  std::map<char, std::size_t> counts;
  for (std::size_t i = 0; i < text.size(); ++i) ++counts[text.str()[i]];
  std::map<char, Rational> out;
  for (const auto& [letter, count] : counts)
    out[letter] = Rational(count, text.size());
  return out;
}

std::size_t FiniteCryptosystem::plaintext_index(std::string_view symbol) const {
  auto it = std::find(plaintexts.begin(), plaintexts.end(), symbol);
  if (it == plaintexts.end()) throw std::invalid_argument("unknown plaintext symbol");
  return static_cast<std::size_t>(it - plaintexts.begin());
}

std::size_t FiniteCryptosystem::ciphertext_index(std::string_view symbol) const {
  auto it = std::find(ciphertexts.begin(), ciphertexts.end(), symbol);
  if (it == ciphertexts.end()) throw std::invalid_argument("unknown ciphertext symbol");
  return static_cast<std::size_t>(it - ciphertexts.begin());
}

void FiniteCryptosystem::validate() const {
  if (plaintexts.empty() || ciphertexts.empty() || keys.empty())
    throw std::invalid_argument("cryptosystem: empty symbol set");
  if (plaintext_dist.size() != plaintexts.size() || key_dist.size() != keys.size())
    throw std::invalid_argument("cryptosystem: distribution size mismatch");
  Rational sum_p = 0, sum_k = 0;
  for (const Rational& r : plaintext_dist) {
    if (r < 0) throw std::invalid_argument("cryptosystem: negative probability");
    sum_p += r;
  }
  for (const Rational& r : key_dist) {
    if (r < 0) throw std::invalid_argument("cryptosystem: negative probability");
    sum_k += r;
  }
  if (sum_p != 1) throw std::invalid_argument("cryptosystem: plaintext distribution must sum to 1");
  if (sum_k != 1) throw std::invalid_argument("cryptosystem: key distribution must sum to 1");
  if (enc.size() != keys.size()) throw std::invalid_argument("cryptosystem: enc table incomplete");
  for (const auto& row : enc) {
    if (row.size() != plaintexts.size())
      throw std::invalid_argument("cryptosystem: enc table incomplete");
    std::vector<bool> seen(ciphertexts.size(), false);
    for (std::size_t c : row) {
      if (c >= ciphertexts.size()) throw std::invalid_argument("cryptosystem: enc out of range");
      if (seen[c]) throw std::invalid_argument("cryptosystem: key maps two plaintexts to one ciphertext");
      seen[c] = true;
    }
  }
}

namespace {

Rational parse_rational(const std::string& token, std::size_t line) {
  const auto slash = token.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(token));
    return Rational(Integer(token.substr(0, slash)), Integer(token.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("bad rational '" + token + "'", line);
  }
}

}  // namespace

FiniteCryptosystem FiniteCryptosystem::load(std::istream& in) {
  FiniteCryptosystem sys;
  std::map<std::string, Rational> p_dist, k_dist;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "P:" || head == "C:" || head == "K:") {
      auto& target = head == "P:" ? sys.plaintexts : head == "C:" ? sys.ciphertexts : sys.keys;
      std::string sym;
      while (ls >> sym) target.push_back(sym);
    } else if (head == "dist") {
      std::string which;
      if (!(ls >> which) || (which != "P" && which != "K"))
        throw ParseError("expected 'dist P' or 'dist K'", lineno);
      std::string item;
      while (ls >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("expected symbol=num/den", lineno);
        (which == "P" ? p_dist : k_dist)[item.substr(0, eq)] =
            parse_rational(item.substr(eq + 1), lineno);
      }
    } else if (head == "enc") {
      std::string k, p, c;
      if (!(ls >> k >> p >> c)) throw ParseError("expected 'enc key plain cipher'", lineno);
      auto find = [&](const std::vector<std::string>& v, const std::string& s) {
        auto it = std::find(v.begin(), v.end(), s);
        if (it == v.end()) throw ParseError("unknown symbol '" + s + "'", lineno);
        return static_cast<std::size_t>(it - v.begin());
      };
      const std::size_t ki = find(sys.keys, k);
      if (sys.enc.empty()) sys.enc.assign(sys.keys.size(), std::vector<std::size_t>(sys.plaintexts.size(), SIZE_MAX));
      sys.enc[ki][find(sys.plaintexts, p)] = find(sys.ciphertexts, c);
    } else {
      throw ParseError("unrecognized directive '" + head + "'", lineno);
    }
  }
  for (const std::string& p : sys.plaintexts) {
    auto it = p_dist.find(p);
    if (it == p_dist.end()) throw ParseError("missing plaintext probability for '" + p + "'", lineno);
    sys.plaintext_dist.push_back(it->second);
  }
  for (const std::string& k : sys.keys) {
    auto it = k_dist.find(k);
    if (it == k_dist.end()) throw ParseError("missing key probability for '" + k + "'", lineno);
    sys.key_dist.push_back(it->second);
  }
  for (const auto& row : sys.enc)
    for (std::size_t c : row)
      if (c == SIZE_MAX) throw ParseError("enc table has missing cells", lineno);
  sys.validate();
  return sys;
}

void FiniteCryptosystem::save(std::ostream& out) const {
  auto puts = [&](const char* tag, const std::vector<std::string>& syms) {
    out << tag;
    for (const auto& s : syms) out << ' ' << s;
    out << '\n';
  };
  puts("P:", plaintexts);
  puts("C:", ciphertexts);
  puts("K:", keys);
  for (std::size_t p = 0; p < plaintexts.size(); ++p)
    out << "dist P " << plaintexts[p] << '=' << plaintext_dist[p] << '\n';
  for (std::size_t k = 0; k < keys.size(); ++k)
    out << "dist K " << keys[k] << '=' << key_dist[k] << '\n';
  for (std::size_t k = 0; k < keys.size(); ++k)
    for (std::size_t p = 0; p < plaintexts.size(); ++p)
      out << "enc " << keys[k] << ' ' << plaintexts[p] << ' ' << ciphertexts[enc[k][p]] << '\n';
}

Rational ciphertext_probability(const FiniteCryptosystem& sys, std::size_t c) {
  Rational sum = 0;
  for (std::size_t k = 0; k < sys.keys.size(); ++k)
    for (std::size_t p = 0; p < sys.plaintexts.size(); ++p)
      if (sys.enc[k][p] == c) sum += sys.plaintext_dist[p] * sys.key_dist[k];
  return sum;
}

Rational posterior(const FiniteCryptosystem& sys, std::size_t p, std::size_t c) {
  const Rational pc = ciphertext_probability(sys, c);
  if (pc == 0) throw std::invalid_argument("posterior: conditioning on impossible ciphertext");
  Rational joint = 0;
  for (std::size_t k = 0; k < sys.keys.size(); ++k)
    if (sys.enc[k][p] == c) joint += sys.plaintext_dist[p] * sys.key_dist[k];
  return joint / pc;
}

Rational posterior_bayes(const FiniteCryptosystem& sys, std::size_t p, std::size_t c) {
  const Rational pc = ciphertext_probability(sys, c);
  if (pc == 0) throw std::invalid_argument("posterior: conditioning on impossible ciphertext");
  Rational c_given_p = 0;
  for (std::size_t k = 0; k < sys.keys.size(); ++k)
    if (sys.enc[k][p] == c) c_given_p += sys.key_dist[k];
  return c_given_p * sys.plaintext_dist[p] / pc;
}

SecrecyVerdict is_perfectly_secret(const FiniteCryptosystem& sys) {
  for (const Rational& pr : sys.plaintext_dist)
    if (pr == 0) throw std::invalid_argument("is_perfectly_secret: needs Pr(p) > 0 for all p");
  for (std::size_t p = 0; p < sys.plaintexts.size(); ++p) {
    for (std::size_t c = 0; c < sys.ciphertexts.size(); ++c) {
      if (ciphertext_probability(sys, c) == 0) continue;
      if (posterior(sys, p, c) != sys.plaintext_dist[p]) return {false, std::make_pair(p, c)};
    }
  }
  return {true, std::nullopt};
}

ShannonConditions shannon_conditions(const FiniteCryptosystem& sys) {
  if (sys.ciphertexts.size() != sys.keys.size())
    throw std::invalid_argument("shannon_conditions: needs |C| = |K|");
  for (const Rational& pr : sys.plaintext_dist)
    if (pr == 0) throw std::invalid_argument("shannon_conditions: needs Pr(p) > 0 for all p");

  ShannonConditions out;
  const Rational uniform(1, sys.keys.size());
  out.uniform_keys =
      std::all_of(sys.key_dist.begin(), sys.key_dist.end(), [&](const Rational& r) { return r == uniform; });

  out.unique_key_per_pair = true;
  for (std::size_t p = 0; p < sys.plaintexts.size() && out.unique_key_per_pair; ++p) {
    for (std::size_t c = 0; c < sys.ciphertexts.size(); ++c) {
      std::size_t hits = 0;
      for (std::size_t k = 0; k < sys.keys.size(); ++k)
        if (sys.enc[k][p] == c) ++hits;
      if (hits != 1) {
        out.unique_key_per_pair = false;
        break;
      }
    }
  }
  return out;
}

namespace {

std::vector<std::string> bit_symbols(std::size_t nbits) {
  std::vector<std::string> out;
  const std::size_t total = std::size_t{1} << nbits;
  for (std::size_t v = 0; v < total; ++v) {
    std::string s(nbits, '0');
    for (std::size_t i = 0; i < nbits; ++i)
      if (v & (std::size_t{1} << (nbits - 1 - i))) s[i] = '1';
    out.push_back(s);
  }
  return out;
}

std::vector<Rational> uniform_dist(std::size_t n) {
  return std::vector<Rational>(n, Rational(1, n));
}

}  // namespace

FiniteCryptosystem one_time_pad_system(std::size_t nbits,
                                       std::optional<std::vector<Rational>> plaintext_dist) {
  FiniteCryptosystem sys;
  sys.plaintexts = sys.ciphertexts = sys.keys = bit_symbols(nbits);
  const std::size_t total = sys.plaintexts.size();
  sys.plaintext_dist = plaintext_dist ? std::move(*plaintext_dist) : uniform_dist(total);
  sys.key_dist = uniform_dist(total);
  sys.enc.assign(total, std::vector<std::size_t>(total));
  for (std::size_t k = 0; k < total; ++k)
    for (std::size_t p = 0; p < total; ++p) sys.enc[k][p] = k ^ p;
  sys.validate();
  return sys;
}

FiniteCryptosystem shift_cipher_system(std::size_t modulus,
                                       std::optional<std::vector<Rational>> plaintext_dist) {
  FiniteCryptosystem sys;
  for (std::size_t v = 0; v < modulus; ++v) {
    sys.plaintexts.push_back(std::to_string(v));
    sys.ciphertexts.push_back(std::to_string(v));
    sys.keys.push_back(std::to_string(v));
  }
  sys.plaintext_dist = plaintext_dist ? std::move(*plaintext_dist) : uniform_dist(modulus);
  sys.key_dist = uniform_dist(modulus);
  sys.enc.assign(modulus, std::vector<std::size_t>(modulus));
  for (std::size_t k = 0; k < modulus; ++k)
    for (std::size_t p = 0; p < modulus; ++p) sys.enc[k][p] = (k + p) % modulus;
  sys.validate();
  return sys;
}

}  // namespace workbench::classical

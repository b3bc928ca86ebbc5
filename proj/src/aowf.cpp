#include "workbench/aowf.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "workbench/errors.hpp"

namespace workbench::aowf {

PartialFn as_partial(TotalFn f) {
  return [f = std::move(f)](const Natural& a, const Natural& b) -> std::optional<Natural> {
    return f(a, b);
  };
}

Natural pair(const Natural& x, const Natural& y) {
  const Natural s = x + y;
  return (s * (s + Natural(1))) / 2 + y;
}

std::pair<Natural, Natural> unpair(const Natural& z) {
  const Natural w = (isqrt(Natural(8) * z + Natural(1)) - Natural(1)) / 2;
  const Natural t = (w * (w + Natural(1))) / 2;
  const Natural y = z - t;
  const Natural x = w - y;
  return {x, y};
}

BotFn bot_extend(PartialFn f) {
  return [f = std::move(f)](const BotValue& a, const BotValue& b) -> BotValue {
    if (!a || !b) return std::nullopt;
    return f(*a, *b);
  };
}

TotalFn totalize(PartialFn f) {
  return [f = std::move(f)](const Natural& a, const Natural& b) -> Natural {
    if (a.is_zero() || b.is_zero()) return Natural(0);
    return f(a, b).value_or(Natural(0));
  };
}

Natural encode_graph(const graphs::Graph& g) {
  const std::string text = g.to_text();
  Natural value = 0;
  for (char c : text) {
    value <<= 8;
    value += Natural(static_cast<unsigned char>(c));
  }
  return value + Natural(1);
}

std::optional<graphs::Graph> decode_graph(const Natural& x) {
  if (x.is_zero()) return std::nullopt;
  Natural value = x - Natural(1);
  std::string text;
  while (!value.is_zero()) {
    text.push_back(static_cast<char>((value % Natural(256)).to_u64()));
    value >>= 8;
  }
  std::reverse(text.begin(), text.end());
  try {
    std::istringstream in(text);
    graphs::Graph g = graphs::Graph::load(in);
    // Only canonical encodings decode; anything else is not an instance.
    if (encode_graph(g) != x) return std::nullopt;
    return g;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

std::size_t base4_length(const Natural& v) {
  std::size_t len = 0;
  Natural rest = v;
  while (!rest.is_zero()) {
    rest >>= 2;
    ++len;
  }
  return len;
}

std::vector<std::uint8_t> base4_digits(const Natural& v) {
  // Most significant digit first.
  std::vector<std::uint8_t> digits;
  Natural rest = v;
  while (!rest.is_zero()) {
    digits.push_back(static_cast<std::uint8_t>((rest % Natural(4)).to_u64()));
    rest >>= 2;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::uint8_t color_digit(graphs::Color c) {
  switch (c) {
    case graphs::Color::red: return 1;
    case graphs::Color::green: return 2;
    case graphs::Color::blue: return 3;
  }
  throw std::invalid_argument("color_digit: bad color");
}

graphs::Color digit_color(std::uint8_t d) {
  switch (d) {
    case 1: return graphs::Color::red;
    case 2: return graphs::Color::green;
    case 3: return graphs::Color::blue;
    default: throw std::invalid_argument("digit_color: bad digit");
  }
}

// Certificates of x occupy exactly base4_length(x) + n + 1 digits: a pad
// of 1-digits, then one color digit per vertex. Strictly longer than x,
// same length for every certificate of x, and digit-wise comparison of
// equal-length numerals makes min() the lexicographically smaller coloring.
std::size_t certificate_length(const Natural& x, std::size_t vertex_count) {
  return base4_length(x) + vertex_count + 1;
}

}  // namespace

Natural encode_certificate(const Natural& x, const graphs::Coloring3& psi) {
  const std::size_t total = certificate_length(x, psi.assignment.size());
  const std::size_t pad = total - psi.assignment.size();
  Natural value = 0;
  for (std::size_t i = 0; i < pad; ++i) {
    value <<= 2;
    value += 1;
  }
  for (graphs::Color c : psi.assignment) {
    value <<= 2;
    value += Natural(color_digit(c));
  }
  return value;
}

std::optional<graphs::Coloring3> decode_certificate(const Natural& x, const Natural& z) {
  const auto g = decode_graph(x);
  if (!g) return std::nullopt;
  const std::size_t n = g->vertex_count();
  const std::size_t total = certificate_length(x, n);
  const auto digits = base4_digits(z);
  if (digits.size() != total) return std::nullopt;
  for (std::size_t i = 0; i < total - n; ++i)
    if (digits[i] != 1) return std::nullopt;
  graphs::Coloring3 psi;
  psi.assignment.reserve(n);
  for (std::size_t i = total - n; i < total; ++i) {
    if (digits[i] < 1 || digits[i] > 3) return std::nullopt;
    psi.assignment.push_back(digit_color(digits[i]));
  }
  if (!graphs::is_legal_3coloring(*g, psi)) return std::nullopt;
  return psi;
}

bool is_certificate(const Natural& x, const Natural& z) {
  return decode_certificate(x, z).has_value();
}

std::optional<Natural> sigma_cert(const Natural& a, const Natural& b) {
  const auto [x1, z1] = unpair(a);
  const auto [x2, z2] = unpair(b);
  if (x1 != x2) return std::nullopt;
  const Natural& x = x1;
  const bool cert1 = is_certificate(x, z1);
  const bool cert2 = is_certificate(x, z2);
  if (cert1 && cert2) return pair(x, std::min(z1, z2));
  if ((z1 == x && cert2) || (cert1 && z2 == x)) return pair(x, x);
  return std::nullopt;
}

std::vector<Natural> certificate_domain(const graphs::Graph& g, std::size_t min_size) {
  const Natural x = encode_graph(g);
  std::set<Natural> elements;
  std::optional<Natural> first_certificate;
  for (const auto& psi : graphs::enumerate_3colorings(g)) {
    const Natural z = encode_certificate(x, psi);
    if (!first_certificate) first_certificate = z;
    elements.insert(pair(x, z));
  }
  elements.insert(pair(x, x));
  // Deterministic non-members: a wrong-length witness claim, a foreign
  // instance, and small naturals, so the undefined branches get exercised.
  elements.insert(pair(x, x + Natural(1)));
  if (first_certificate) elements.insert(pair(x + Natural(1), *first_certificate));
  for (Natural filler = 0; elements.size() < min_size; ++filler) elements.insert(filler);
  return {elements.begin(), elements.end()};
}

Natural sigma_strong(const Natural& a, const Natural& b, const TotalFn& rho) {
  if (a.is_zero() || b.is_zero()) return a + b;
  if (a.is_odd() != b.is_odd()) {
    const Natural& odd_argument = a.is_odd() ? a : b;
    const auto [x, y] = unpair(odd_argument);
    return Natural(2) * rho(x, y);
  }
  return Natural(2) * (a + b) + Natural(1);
}

TotalFn default_rho() {
  return [](const Natural& x, const Natural& y) { return pair(x * y + Natural(1), x + y); };
}

std::pair<Natural, Natural> universal_inverter_for_sigma_strong(const Natural& z) {
  return {Natural(0), z};
}

CheckResult check_associative(const PartialFn& f, const std::vector<Natural>& domain) {
  const BotFn sigma = bot_extend(f);
  for (const Natural& a : domain) {
    for (const Natural& b : domain) {
      const BotValue ab = sigma(a, b);
      for (const Natural& c : domain) {
        const BotValue left = sigma(ab, c);
        const BotValue right = sigma(a, sigma(b, c));
        if (left != right) return {false, {a, b, c}};
      }
    }
  }
  return {};
}

CheckResult check_weakly_associative(const PartialFn& f, const std::vector<Natural>& domain) {
  for (const Natural& a : domain) {
    for (const Natural& b : domain) {
      const auto ab = f(a, b);
      if (!ab) continue;
      for (const Natural& c : domain) {
        const auto bc = f(b, c);
        if (!bc) continue;
        const auto left = f(*ab, c);
        const auto right = f(a, *bc);
        if (!left || !right) continue;  // equation constrained only where all four applications exist
        if (*left != *right) return {false, {a, b, c}};
      }
    }
  }
  return {};
}

CheckResult check_commutative(const PartialFn& f, const std::vector<Natural>& domain) {
  const BotFn sigma = bot_extend(f);
  for (const Natural& a : domain)
    for (const Natural& b : domain)
      if (sigma(a, b) != sigma(b, a)) return {false, {a, b}};
  return {};
}

std::optional<Natural> invert_first_bruteforce(const PartialFn& f, const Natural& a,
                                               const Natural& z, const Natural& bound) {
  for (Natural b = 0; b <= bound; ++b)
    if (f(a, b) == std::optional<Natural>(z)) return b;
  return std::nullopt;
}

std::optional<Natural> invert_second_bruteforce(const PartialFn& f, const Natural& b,
                                                const Natural& z, const Natural& bound) {
  for (Natural a = 0; a <= bound; ++a)
    if (f(a, b) == std::optional<Natural>(z)) return a;
  return std::nullopt;
}

OverstrongnessVerdict overstrongness_falsifier(const PartialFn& f,
                                               const std::vector<Natural>& slice,
                                               const std::vector<Natural>& candidates) {
  // Values realized on the slice, deduplicated.
  std::set<Natural> realized;
  for (const Natural& a : slice)
    for (const Natural& b : slice)
      if (const auto z = f(a, b)) realized.insert(*z);

  // The concrete inverter under test ignores the given argument entirely:
  // first candidate pair hitting z wins.
  auto any_preimage = [&](const Natural& z) {
    for (const Natural& u : candidates)
      for (const Natural& v : candidates)
        if (f(u, v) == std::optional<Natural>(z)) return true;
    return false;
  };

  OverstrongnessVerdict verdict;
  verdict.inverter_exhibited = true;
  for (const Natural& z : realized) {
    if (!any_preimage(z)) {
      verdict.inverter_exhibited = false;
      verdict.uninverted_values.push_back(z);
    }
  }
  if (realized.empty()) verdict.inverter_exhibited = false;
  return verdict;
}

}  // namespace workbench::aowf

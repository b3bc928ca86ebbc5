#include "workbench/natural.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace workbench {

namespace mp = boost::multiprecision;

Natural::Natural(Integer v) : v_(std::move(v)) {
  if (v_ < 0) throw std::invalid_argument("Natural: negative value");
}

Natural Natural::from_dec(std::string_view text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
    return from_hex(text);
  if (text.empty()) throw std::invalid_argument("Natural: empty numeral");
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("Natural: bad decimal digit");
  return Natural(Integer(std::string(text)));
}

Natural Natural::from_hex(std::string_view text) {
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X'))
    digits.remove_prefix(2);
  if (digits.empty()) throw std::invalid_argument("Natural: empty hex numeral");
  for (char c : digits)
    if (!std::isxdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("Natural: bad hex digit");
  return Natural(Integer("0x" + std::string(digits)));
}

std::size_t Natural::bit_length() const {
  if (v_.is_zero()) return 0;
  return static_cast<std::size_t>(mp::msb(v_)) + 1;
}

std::size_t Natural::popcount() const {
  std::size_t count = 0;
  for (std::size_t i = 0, n = bit_length(); i < n; ++i)
    if (bit(i)) ++count;
  return count;
}

std::uint64_t Natural::to_u64() const {
  if (v_ > Integer(UINT64_MAX)) throw std::overflow_error("Natural: value exceeds 64 bits");
  return v_.convert_to<std::uint64_t>();
}

std::string Natural::to_dec() const { return v_.str(); }

std::string Natural::to_hex() const {
  std::ostringstream os;
  os << std::hex << v_;
  return "0x" + os.str();
}

Natural& Natural::operator+=(const Natural& o) {
  v_ += o.v_;
  return *this;
}

Natural& Natural::operator-=(const Natural& o) {
  if (v_ < o.v_) throw std::invalid_argument("Natural: subtraction underflow");
  v_ -= o.v_;
  return *this;
}

Natural& Natural::operator*=(const Natural& o) {
  v_ *= o.v_;
  return *this;
}

Natural& Natural::operator/=(const Natural& o) {
  if (o.is_zero()) throw std::invalid_argument("Natural: division by zero");
  v_ /= o.v_;
  return *this;
}

Natural& Natural::operator%=(const Natural& o) {
  if (o.is_zero()) throw std::invalid_argument("Natural: modulo by zero");
  v_ %= o.v_;
  return *this;
}

Natural& Natural::operator<<=(std::size_t k) {
  v_ <<= static_cast<unsigned>(k);
  return *this;
}

Natural& Natural::operator>>=(std::size_t k) {
  v_ >>= static_cast<unsigned>(k);
  return *this;
}

Natural& Natural::operator++() {
  ++v_;
  return *this;
}

Natural operator+(Natural a, const Natural& b) { return a += b; }
Natural operator-(Natural a, const Natural& b) { return a -= b; }
Natural operator*(Natural a, const Natural& b) { return a *= b; }
Natural operator/(Natural a, const Natural& b) { return a /= b; }
Natural operator%(Natural a, const Natural& b) { return a %= b; }
Natural operator<<(Natural a, std::size_t k) { return a <<= k; }
Natural operator>>(Natural a, std::size_t k) { return a >>= k; }

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.value(); }

Natural gcd(const Natural& a, const Natural& b) {
  return Natural(mp::gcd(a.value(), b.value()));
}

Natural isqrt(const Natural& n) { return Natural(mp::sqrt(n.value())); }

Natural mod_reduce(const Integer& v, const Natural& m) {
  if (m.is_zero()) throw std::invalid_argument("mod_reduce: zero modulus");
  Integer r = v % m.value();
  if (r < 0) r += m.value();
  return Natural(r);
}

}  // namespace workbench

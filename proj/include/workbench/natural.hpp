#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace workbench {

// Signed arbitrary-precision integer. Public APIs use Natural; Integer is
// reserved for results that are genuinely signed (extended Euclid
// coefficients, intermediate differences).
using Integer = boost::multiprecision::cpp_int;

// Exact rational, kept in lowest terms by the backend.
using Rational = boost::multiprecision::cpp_rational;

// Arbitrary-precision nonnegative integer, the numeric carrier for all
// modular arithmetic. Construction from a negative value throws; subtraction
// below zero throws. All arithmetic is exact.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Natural(Integer v);

  // Parses decimal digits, or hex with a 0x prefix.
  static Natural from_dec(std::string_view text);
  // Parses lowercase/uppercase hex, "0x" prefix optional.
  static Natural from_hex(std::string_view text);

  const Integer& value() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }
  bool is_odd() const { return boost::multiprecision::bit_test(v_, 0); }
  bool is_even() const { return !is_odd(); }

  // Number of significant bits; 0 for zero.
  std::size_t bit_length() const;
  bool bit(std::size_t i) const { return boost::multiprecision::bit_test(v_, static_cast<unsigned>(i)); }
  std::size_t popcount() const;

  // Throws std::overflow_error if the value does not fit.
  std::uint64_t to_u64() const;

  std::string to_dec() const;
  // Lowercase hex with "0x" prefix; this is the wire format for all file
  // formats and transcripts.
  std::string to_hex() const;

  Natural& operator+=(const Natural& o);
  Natural& operator-=(const Natural& o);
  Natural& operator*=(const Natural& o);
  Natural& operator/=(const Natural& o);
  Natural& operator%=(const Natural& o);
  Natural& operator<<=(std::size_t k);
  Natural& operator>>=(std::size_t k);
  Natural& operator++();

  friend bool operator==(const Natural& a, const Natural& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Integer v_;
};

Natural operator+(Natural a, const Natural& b);
Natural operator-(Natural a, const Natural& b);
Natural operator*(Natural a, const Natural& b);
Natural operator/(Natural a, const Natural& b);
Natural operator%(Natural a, const Natural& b);
Natural operator<<(Natural a, std::size_t k);
Natural operator>>(Natural a, std::size_t k);

std::ostream& operator<<(std::ostream& os, const Natural& n);

Natural gcd(const Natural& a, const Natural& b);
// Floor of the square root.
Natural isqrt(const Natural& n);
// Reduces a signed value into [0, m).
Natural mod_reduce(const Integer& v, const Natural& m);

}  // namespace workbench

#pragma once

// Exact scalars and the high-precision decimal used for reporting norms.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rilab {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Decimal = boost::multiprecision::cpp_dec_float_100;

// Tolerance for comparisons that cannot be done on exact certificates.
inline const Decimal kDecimalTolerance{"1e-30"};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UniverseError : public Error {
 public:
  using Error::Error;
};

class SizingError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::strong_ordering cmp(const Rational& a, const Rational& b) {
  int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// Parses "p/q", "p" or "-p/q". Whitespace is not accepted.
std::optional<Rational> try_parse_rational(std::string_view text);
Rational parse_rational(std::string_view text);

// Always "p/q" (integers as "p/1") so the text form is lossless and uniform.
std::string to_string(const Rational& r);

Decimal to_decimal(const Rational& r);
std::string to_decimal_string(const Rational& r, int digits);
std::string to_decimal_string(const Decimal& d, int digits);

Rational pow(const Rational& base, unsigned exponent);

// 2^{-n} and friends.
Rational pow2(int exponent);

// Exact k-th root when base is the k-th power of a rational.
std::optional<Rational> exact_root(const Rational& base, unsigned k);

// Exponent n with r = m / 2^n, m odd, n >= 0; nullopt when the denominator is not a power of two.
std::optional<unsigned> dyadic_exponent(const Rational& r);

}  // namespace rilab

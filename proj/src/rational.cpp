#include "rilab/rational.hpp"

#include <charconv>
#include <sstream>

namespace rilab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::optional<Integer> integer_root(const Integer& value, unsigned k) {
  Integer root;
  int exact = mpz_root(root.backend().data(), value.backend().data(), k);
  if (!exact) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Rational> try_parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view p = text.substr(0, slash);
  std::string_view q = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(p) || !all_digits(q)) return std::nullopt;
  Integer n{std::string(p)};
  Integer d{std::string(q)};
  if (d == 0) return std::nullopt;
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

Rational parse_rational(std::string_view text) {
  auto r = try_parse_rational(text);
  if (!r) throw DomainError("not a rational: '" + std::string(text) + "'");
  return *r;
}

std::string to_string(const Rational& r) { return num(r).str() + "/" + den(r).str(); }

Decimal to_decimal(const Rational& r) { return Decimal(num(r).str()) / Decimal(den(r).str()); }

std::string to_decimal_string(const Decimal& d, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << d;
  return os.str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  return to_decimal_string(to_decimal(r), digits);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

Rational pow2(int exponent) {
  Integer p = 1;
  p <<= static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  return exponent < 0 ? Rational(Integer(1), p) : Rational(p);
}

std::optional<Rational> exact_root(const Rational& base, unsigned k) {
  if (k == 0) throw DomainError("zeroth root");
  if (k == 1) return base;
  if (base < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_root(-base, k);
    if (!r) return std::nullopt;
    return Rational(-*r);
  }
  auto n = integer_root(num(base), k);
  auto d = integer_root(den(base), k);
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

std::optional<unsigned> dyadic_exponent(const Rational& r) {
  Integer d = den(r);
  unsigned n = 0;
  while (d > 1) {
    if ((d & 1) != 0) return std::nullopt;
    d >>= 1;
    ++n;
  }
  return n;
}

}  // namespace rilab

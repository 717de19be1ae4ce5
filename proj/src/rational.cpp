#include "lieq/rational.hpp"

#include "lieq/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace lieq {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> Rational { throw ParseError(msg, i); };
  auto read_int = [&]() -> BigInt {
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      fail("expected integer");
    BigInt v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      ++i;
    }
    return neg ? BigInt(-v) : v;
  };

  BigInt num = read_int();
  BigInt den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = read_int();
    if (den == 0) fail("zero denominator");
  }
  if (i != text.size()) fail("trailing characters in rational literal");
  return Rational(num, den);
}

Rational rational_from_double(double x, long max_denominator) {
  if (!std::isfinite(x)) throw DomainError("cannot convert non-finite value to a rational");
  const bool neg = x < 0;
  double v = std::fabs(x);

  // Stern-Brocot style continued-fraction convergents.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double ip = std::floor(frac);
    BigInt a = static_cast<long long>(ip);
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - ip;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational r(p1, q1);
  return neg ? Rational(-r) : r;
}

}  // namespace lieq

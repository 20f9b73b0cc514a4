#include "tsurf/rational.hpp"

#include "tsurf/errors.hpp"

namespace tsurf {

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in rational '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

BigInt numerator_of(const Rational& r) { return numerator(r); }
BigInt denominator_of(const Rational& r) { return denominator(r); }

BigInt floor_of(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational frac(const Rational& r) { return r - Rational(floor_of(r)); }

}  // namespace tsurf

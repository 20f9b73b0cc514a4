#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace tsurf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);
// Accepts "p", "-p", "p/q".
Rational parse_rational(std::string_view text);
double to_double(const Rational& r);
bool is_integer(const Rational& r);
BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);
// Fractional part in [0,1).
Rational frac(const Rational& r);
BigInt floor_of(const Rational& r);

}  // namespace tsurf

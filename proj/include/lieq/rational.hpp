#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace lieq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

/// Canonical textual form: "p" for integers, "p/q" otherwise, q > 0.
std::string to_string(const Rational& r);

/// Parses "3", "-2/7", "+5".  Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Nearest rational with denominator bounded by max_denominator
/// (continued-fraction rounding).  Used to lift numeric roots back to
/// exact candidates.
Rational rational_from_double(double x, long max_denominator = 1000000);

}  // namespace lieq

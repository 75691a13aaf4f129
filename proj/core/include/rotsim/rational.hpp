#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace rotsim {

/// Arbitrary-precision rational, always held in reduced form.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_rational(double value);

double to_double(const Rational& value);

/// "num/den" with den > 0, e.g. "-4/3", "2/1".
std::string to_string(const Rational& value);

/// Accepts "num/den", "num", or a decimal literal such as "0.25".
Rational parse_rational(std::string_view text);

}  // namespace rotsim

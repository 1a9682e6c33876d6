#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace frankl {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator. All probabilities and weights stay exact in this type;
/// conversion to double happens only at explicitly chosen boundaries.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q" for non-integers, plain "p" otherwise.
std::string to_string(const Rational& r);

/// Parses "p", "p/q", or "-p/q". Throws ParseError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

}  // namespace frankl

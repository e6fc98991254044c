#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace lcbc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders as "p/q" in canonical lowest terms, denominator always explicit.
std::string rat_str(const Rational& r);

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input or
/// zero denominator.
Rational rat_parse(const std::string& s);

/// Least common multiple of the denominators, as a positive integer. Empty
/// input yields 1.
BigInt denominator_lcm(const std::vector<Rational>& values);

}  // namespace lcbc

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace surfmmp {

/// Exact rational number. Every quantity in the library (coefficients,
/// intersection numbers on singular models, discrepancies) is one of these.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p", "-p" or "p/q" (q > 0 after sign normalisation). Throws
/// ArgumentError on anything else, including decimal notation.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

inline bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace surfmmp

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace jetmorse {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// n! (memoized for small n; the table is built once and then read-only).
const Integer& factorial(unsigned n);

/// Rising factorial x (x+1) ... (x+m-1), with the empty product equal to 1.
Integer rising_factorial(std::uint64_t x, unsigned m);

/// Natural log of a positive rational, accurate to double precision even
/// when numerator and denominator overflow a double.
double log_of(const Rational& q);

/// "num/den" (or "num" when den == 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace jetmorse

#include "jetmorse/exact.hpp"

#include <cmath>
#include <vector>

namespace jetmorse {

namespace {

constexpr unsigned kFactorialTableSize = 1024;

const std::vector<Integer>& factorial_table() {
  static const std::vector<Integer> table = [] {
    std::vector<Integer> t(kFactorialTableSize);
    t[0] = 1;
    for (unsigned i = 1; i < kFactorialTableSize; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

// log of a positive big integer: log(mantissa) + exponent * log 2
double log_integer(const Integer& z) {
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, z.backend().data());
  return std::log(mantissa) + double(exponent) * std::log(2.0);
}

}  // namespace

const Integer& factorial(unsigned n) {
  const auto& table = factorial_table();
  if (n < table.size()) return table[n];
  thread_local Integer big;
  mpz_fac_ui(big.backend().data(), n);
  return big;
}

Integer rising_factorial(std::uint64_t x, unsigned m) {
  Integer out = 1;
  for (unsigned i = 0; i < m; ++i) out *= Integer(x + i);
  return out;
}

double log_of(const Rational& q) {
  return log_integer(numerator(q)) - log_integer(denominator(q));
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace jetmorse

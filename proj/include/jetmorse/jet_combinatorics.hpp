#pragma once

#include <cstdint>
#include <string>

#include "jetmorse/exact.hpp"

namespace jetmorse {

/// Euler-Mascheroni constant to 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Exact harmonic number H_k = 1 + 1/2 + ... + 1/k.
struct Harmonic {
  unsigned k = 0;
  Rational value;

  explicit Harmonic(unsigned k);
};

Rational harmonic(unsigned k);

/// Sum_{s<=k} 1/s^2 in double precision.
double inverse_square_sum(unsigned k);

/// Default ceiling on the number of weak compositions ikrn_exact may visit.
inline constexpr std::uint64_t kDefaultCompositionCeiling = 100'000'000;

/// Number of weak compositions of n into k parts, C(n+k-1, n). Saturates at
/// UINT64_MAX.
std::uint64_t composition_count(unsigned k, unsigned n);

/// I_{k,r,n} = integral of (sum_s x_s/s)^n against nu_{k,r}, summed over the
/// weak compositions beta of n into k parts with multinomial multiplicity.
/// Throws ResourceLimitError when C(n+k-1,n) exceeds `ceiling`.
Rational ikrn_exact(unsigned k, unsigned r, unsigned n,
                    std::uint64_t ceiling = kDefaultCompositionCeiling);

/// Same quantity from the coefficient of t^n in prod_{i<=k} (1 - t/i)^{-r};
/// O(k n^2) rational operations, no enumeration.
Rational ikrn_series(unsigned k, unsigned r, unsigned n);

struct IkrnBounds {
  Rational lower;
  Rational upper;
};

/// lower = r^n H_k^n / (kr (kr+1) ... (kr+n-1));
/// upper = lower * (1 + (1/3) sum_{m=2}^{n} 2^m n!/(n-m)! H_k^{-m}).
IkrnBounds ikrn_bounds(unsigned k, unsigned r, unsigned n);

/// (log k + gamma)^n / k^n.
double ikrn_asymptotic(unsigned k, unsigned n);

/// The error quotient bounding the relative Morse-integral error.
struct EpsilonRatio {
  /// I_{k,r,2n-2} / (k (k + 1/r) I_{k,r,n}^2), the square of the quotient.
  Rational exact_squared;
  /// sqrt(exact_squared) to 30 significant digits.
  std::string exact_decimal;
  double exact = 0.0;
  /// Square of the harmonic-sum bound
  /// (1 + (1/3) sum_{m=2}^{2n-2} 2^m (2n-2)!/(2n-2-m)! H_k^{-m})^{1/2} / H_k.
  Rational harmonic_bound_squared;
  double harmonic_bound = 0.0;
  /// sqrt(31/15) / log k.
  double paper_bound = 0.0;
  /// Rigorous comparisons: rational for the first, outward-rounded MPFR
  /// arithmetic for those involving log k.
  bool exact_le_harmonic = false;
  bool harmonic_le_paper = false;
  bool exact_le_paper = false;
};

/// Requires n >= 1 and k >= 2.
EpsilonRatio epsilon_ratio(unsigned k, unsigned r, unsigned n,
                           std::uint64_t ceiling = kDefaultCompositionCeiling);

/// Certified test of  q <= c / (log k)^2  for a rational q >= 0, a rational
/// c and k >= 2, using directed rounding. Returns false when the comparison
/// cannot be certified.
bool certified_le_over_log_squared(const Rational& q, const Rational& c, unsigned k);

}  // namespace jetmorse

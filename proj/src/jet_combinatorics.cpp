#include "jetmorse/jet_combinatorics.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "jetmorse/error.hpp"

namespace jetmorse {

namespace {

Integer lcm_up_to(unsigned k) {
  Integer l = 1;
  for (unsigned i = 2; i <= k; ++i) l = boost::multiprecision::lcm(l, Integer(i));
  return l;
}

Rational power(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

// 1 + (1/3) sum_{m=2}^{n} 2^m n!/(n-m)! H^{-m}
Rational bracket_factor(unsigned n, const Rational& h) {
  Rational sum = 0;
  Rational inv_h = 1 / h;
  Rational inv_pow = inv_h;
  for (unsigned m = 2; m <= n; ++m) {
    inv_pow *= inv_h;
    Integer falling = factorial(n) / factorial(n - m);
    sum += Rational(Integer(1) << m) * Rational(falling) * inv_pow;
  }
  return 1 + sum / 3;
}

// RAII wrapper over an mpfr_t
struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec = 256) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// q * (log k)^2 rounded in direction `rnd`
void scaled_log_square(Mpfr& out, const Rational& q, unsigned k, mpfr_rnd_t rnd) {
  Mpfr logk, qv;
  mpfr_set_ui(logk.v, k, rnd);
  mpfr_log(logk.v, logk.v, rnd);  // log k > 0 for k >= 2, so rounding direction carries through
  mpfr_sqr(logk.v, logk.v, rnd);
  mpfr_set_q(qv.v, q.backend().data(), rnd);
  mpfr_mul(out.v, qv.v, logk.v, rnd);
}

}  // namespace

Harmonic::Harmonic(unsigned k_) : k(k_), value(harmonic(k_)) {}

Rational harmonic(unsigned k) {
  if (k == 0) throw ValidationError("harmonic: k must be positive");
  // common denominator lcm(1..k)
  Integer l = lcm_up_to(k);
  Integer num = 0;
  for (unsigned s = 1; s <= k; ++s) num += l / s;
  return Rational(num, l);
}

double inverse_square_sum(unsigned k) {
  double s = 0.0;
  for (unsigned i = k; i >= 1; --i) s += 1.0 / (double(i) * double(i));
  return s;
}

std::uint64_t composition_count(unsigned k, unsigned n) {
  if (k == 0) return n == 0 ? 1 : 0;
  // C(n+k-1, n) via the smaller of n, k-1
  unsigned a = n + k - 1;
  unsigned b = std::min(n, k - 1);
  Integer c = 1;
  for (unsigned i = 1; i <= b; ++i) c = c * (a - b + i) / i;
  if (c > Integer(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return c.convert_to<std::uint64_t>();
}

Rational ikrn_exact(unsigned k, unsigned r, unsigned n, std::uint64_t ceiling) {
  if (k == 0 || r == 0) throw ValidationError("ikrn_exact: k and r must be positive");
  const std::uint64_t count = composition_count(k, n);
  if (count > ceiling) {
    std::ostringstream msg;
    msg << "ikrn_exact: " << count << " weak compositions exceed the ceiling " << ceiling;
    throw ResourceLimitError(msg.str(), count);
  }
  // I = n!/(kr)_n * sum_beta prod_i C(r+b_i-1, b_i) i^{-b_i}. Scaling every
  // i^{-b} by L^b (L = lcm(1..k)) keeps the sum in the integers.
  const Integer l = lcm_up_to(k);
  std::vector<std::vector<Integer>> weight(k + 1, std::vector<Integer>(n + 1));
  for (unsigned i = 1; i <= k; ++i) {
    const Integer step = l / i;
    Integer pw = 1;
    for (unsigned b = 0; b <= n; ++b) {
      // C(r+b-1, b) = (r)_b / b!
      weight[i][b] = rising_factorial(r, b) / factorial(b) * pw;
      pw *= step;
    }
  }

  Integer total = 0;
  std::vector<Integer> partial(k + 1);
  partial[0] = 1;
  // depth-first over positions; the last position takes the remainder
  auto visit = [&](auto&& self, unsigned i, unsigned remaining) -> void {
    if (i == k) {
      total += partial[i - 1] * weight[i][remaining];
      return;
    }
    for (unsigned b = 0; b <= remaining; ++b) {
      if (b == 0) {
        partial[i] = partial[i - 1];
      } else {
        partial[i] = partial[i - 1] * weight[i][b];
      }
      self(self, i + 1, remaining - b);
    }
  };
  visit(visit, 1, n);

  Integer lpow = 1;
  for (unsigned i = 0; i < n; ++i) lpow *= l;
  return Rational(factorial(n) * total, rising_factorial(std::uint64_t(k) * r, n) * lpow);
}

Rational ikrn_series(unsigned k, unsigned r, unsigned n) {
  if (k == 0 || r == 0) throw ValidationError("ikrn_series: k and r must be positive");
  // coefficients of prod_i sum_b C(r+b-1,b) (t/i)^b truncated at degree n
  std::vector<Rational> poly(n + 1, Rational(0));
  poly[0] = 1;
  for (unsigned i = 1; i <= k; ++i) {
    std::vector<Rational> factor(n + 1);
    Rational pw = 1;
    for (unsigned b = 0; b <= n; ++b) {
      factor[b] = Rational(rising_factorial(r, b) / factorial(b)) * pw;
      pw /= i;
    }
    std::vector<Rational> next(n + 1, Rational(0));
    for (unsigned a = 0; a <= n; ++a) {
      if (poly[a] == 0) continue;
      for (unsigned b = 0; a + b <= n; ++b) next[a + b] += poly[a] * factor[b];
    }
    poly = std::move(next);
  }
  return poly[n] * Rational(factorial(n), rising_factorial(std::uint64_t(k) * r, n));
}

IkrnBounds ikrn_bounds(unsigned k, unsigned r, unsigned n) {
  if (n == 0) throw ValidationError("ikrn_bounds: n must be at least 1");
  if (k == 0 || r == 0) throw ValidationError("ikrn_bounds: k and r must be positive");
  const Rational h = harmonic(k);
  Rational lower = power(Rational(r) * h, n) / Rational(rising_factorial(std::uint64_t(k) * r, n));
  Rational upper = lower * bracket_factor(n, h);
  return {lower, upper};
}

double ikrn_asymptotic(unsigned k, unsigned n) {
  if (k == 0) throw ValidationError("ikrn_asymptotic: k must be positive");
  return std::pow((std::log(double(k)) + kEulerGamma) / double(k), double(n));
}

bool certified_le_over_log_squared(const Rational& q, const Rational& c, unsigned k) {
  if (k < 2) throw ValidationError("certified comparison needs k >= 2");
  Mpfr upper, cv;
  scaled_log_square(upper, q, k, MPFR_RNDU);
  mpfr_set_q(cv.v, c.backend().data(), MPFR_RNDD);
  return mpfr_lessequal_p(upper.v, cv.v) != 0;
}

EpsilonRatio epsilon_ratio(unsigned k, unsigned r, unsigned n, std::uint64_t ceiling) {
  if (n == 0) throw ValidationError("epsilon_ratio: n must be at least 1");
  if (k < 2) throw ValidationError("epsilon_ratio: k must be at least 2");
  EpsilonRatio out;
  const Rational i_top = ikrn_exact(k, r, 2 * n - 2, ceiling);
  const Rational i_n = ikrn_exact(k, r, n, ceiling);
  // k (k + 1/r) = k (kr + 1) / r
  const Rational kk = Rational(Integer(k) * (Integer(k) * r + 1), Integer(r));
  out.exact_squared = i_top / (kk * i_n * i_n);

  const Rational h = harmonic(k);
  out.harmonic_bound_squared = bracket_factor(2 * n - 2, h) / (h * h);

  Mpfr root;
  mpfr_set_q(root.v, out.exact_squared.backend().data(), MPFR_RNDN);
  mpfr_sqrt(root.v, root.v, MPFR_RNDN);
  out.exact = mpfr_get_d(root.v, MPFR_RNDN);
  {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.29Re", root.v);
    out.exact_decimal = buf;
    mpfr_free_str(buf);
  }
  out.harmonic_bound = std::sqrt(to_double(out.harmonic_bound_squared));
  out.paper_bound = std::sqrt(31.0 / 15.0) / std::log(double(k));

  const Rational c = Rational(31, 15);
  out.exact_le_harmonic = out.exact_squared <= out.harmonic_bound_squared;
  out.harmonic_le_paper = certified_le_over_log_squared(out.harmonic_bound_squared, c, k);
  out.exact_le_paper = certified_le_over_log_squared(out.exact_squared, c, k);
  return out;
}

}  // namespace jetmorse

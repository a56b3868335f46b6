#include "jetmorse/measures.hpp"

#include <cmath>
#include <numeric>

#include "jetmorse/error.hpp"

namespace jetmorse {

double SimplexPoint::harmonic_weight() const {
  double w = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) w += x[s] / double(s + 1);
  return w;
}

SimplexPoint sample_dirichlet(std::span<const double> shapes, Stream& rng) {
  if (shapes.empty()) throw ValidationError("sample_dirichlet: empty shape vector");
  SimplexPoint p;
  p.x.resize(shapes.size());
  if (shapes.size() == 1) {
    p.x[0] = 1.0;
    return p;
  }
  double total = 0.0;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    p.x[s] = gamma_draw(rng, shapes[s]);
    total += p.x[s];
  }
  for (double& v : p.x) v /= total;
  return p;
}

SimplexPoint sample_nu(std::size_t k, unsigned r, Stream& rng) {
  if (k == 0 || r == 0) throw ValidationError("sample_nu: k and r must be positive");
  std::vector<double> shapes(k, double(r));
  return sample_dirichlet(shapes, rng);
}

ComplexVector sample_sphere(std::size_t dim, Stream& rng) {
  if (dim == 0) throw ValidationError("sample_sphere: dimension must be positive");
  ComplexVector u(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& c : u) {
      c = complex_normal(rng);
      norm2 += std::norm(c);
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : u) c *= inv;
  return u;
}

SphereTuple sample_sphere_tuple(std::size_t k, std::size_t r, Stream& rng) {
  SphereTuple t;
  t.u.reserve(k);
  for (std::size_t s = 0; s < k; ++s) t.u.push_back(sample_sphere(r, rng));
  return t;
}

Rational nu_moment(std::size_t k, unsigned r, std::span<const unsigned> beta) {
  if (beta.size() != k) throw ValidationError("nu_moment: beta must have k entries");
  if (k == 0 || r == 0) throw ValidationError("nu_moment: k and r must be positive");
  const unsigned n = std::accumulate(beta.begin(), beta.end(), 0u);
  // (kr-1)!/((r-1)!)^k * prod (r+b_i-1)! / (kr+n-1)!
  //   = prod_i r(r+1)...(r+b_i-1) / (kr)(kr+1)...(kr+n-1)
  Integer num = 1;
  for (unsigned b : beta) num *= rising_factorial(r, b);
  Integer den = rising_factorial(std::uint64_t(k) * r, n);
  return Rational(num, den);
}

Rational dirichlet_integral(std::span<const unsigned> r) {
  if (r.empty()) throw ValidationError("dirichlet_integral: empty multiplicity vector");
  Integer num = 1;
  unsigned total = 0;
  for (unsigned rs : r) {
    if (rs == 0) throw ValidationError("dirichlet_integral: multiplicities must be positive");
    num *= factorial(rs - 1);
    total += rs;
  }
  return Rational(num, factorial(total - 1));
}

Rational sphere_moment(unsigned dim, unsigned m) {
  if (dim == 0) throw ValidationError("sphere_moment: dimension must be positive");
  return Rational(factorial(m) * factorial(dim - 1), factorial(m + dim - 1));
}

}  // namespace jetmorse

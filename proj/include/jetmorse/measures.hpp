#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "jetmorse/exact.hpp"
#include "jetmorse/random.hpp"

namespace jetmorse {

using ComplexVector = std::vector<std::complex<double>>;

/// Point of the standard simplex: nonnegative coordinates summing to 1.
struct SimplexPoint {
  std::vector<double> x;

  std::size_t size() const { return x.size(); }
  /// Sum_s x_s / s (1-based s): the weight that drives the jet curvature.
  double harmonic_weight() const;
};

/// Tuple of unit vectors u_s in C^{r_s}.
struct SphereTuple {
  std::vector<ComplexVector> u;

  std::size_t size() const { return u.size(); }
};

/// Dirichlet(shapes) draw by normalized Gamma variates. Draws are taken in
/// coordinate order, so a shorter shape vector consumes a prefix of the
/// same stream.
SimplexPoint sample_dirichlet(std::span<const double> shapes, Stream& rng);

/// Draw from nu_{k,r}: density (kr-1)! (x_1...x_k)^{r-1} / ((r-1)!)^k.
SimplexPoint sample_nu(std::size_t k, unsigned r, Stream& rng);

/// Uniform draw on the unit sphere of C^dim.
ComplexVector sample_sphere(std::size_t dim, Stream& rng);

/// k independent uniform draws on the unit sphere of C^r.
SphereTuple sample_sphere_tuple(std::size_t k, std::size_t r, Stream& rng);

/// Exact integral of x_1^{b_1}...x_k^{b_k} against nu_{k,r}.
Rational nu_moment(std::size_t k, unsigned r, std::span<const unsigned> beta);

/// Exact value of the simplex integral of prod x_s^{r_s-1} dx_1...dx_{k-1},
/// i.e. prod (r_s-1)! / (|r|-1)!.
Rational dirichlet_integral(std::span<const unsigned> r);

/// Exact sphere moment of |u_1|^{2m} for the uniform measure on the unit
/// sphere of C^dim: m! (dim-1)! / (m+dim-1)!.
Rational sphere_moment(unsigned dim, unsigned m);

}  // namespace jetmorse

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "jetmorse/hermitian.hpp"
#include "jetmorse/measures.hpp"
#include "jetmorse/stats.hpp"

namespace jetmorse {

/// Curvature coefficients c[i][j][a][b] of a rank-r hermitian bundle over an
/// n-dimensional base, in orthonormal frames. Sign convention: the
/// quadratic form sum c zeta_i conj(zeta_j) u_a conj(u_b) is the NEGATIVE of
/// <Theta(zeta,zeta)u,u>, so that eta_ij = sum_a c[i][j][a][a] is the
/// curvature of det V^*.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  /// Coefficients in row-major (i, j, a, b) order. Validates the hermitian
  /// symmetry c[i][j][a][b] = conj(c[j][i][b][a]) to 1e-12 relative and
  /// stores the exactly symmetrized tensor.
  CurvatureTensor(std::size_t n, std::size_t r, std::vector<Complex> coeffs);

  static CurvatureTensor zero(std::size_t n, std::size_t r);
  /// c[i][j][a][b] = delta_ij delta_ab.
  static CurvatureTensor unit(std::size_t n, std::size_t r);

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  Complex operator()(std::size_t i, std::size_t j, std::size_t a, std::size_t b) const {
    return c_[index(i, j, a, b)];
  }
  std::span<const Complex> coefficients() const { return c_; }

  /// sum c[i][j][a][b] zeta_i conj(zeta_j) u_a conj(u_b).
  double form(std::span<const Complex> zeta, std::span<const Complex> u) const;

  CurvatureTensor operator+(const CurvatureTensor& o) const;
  CurvatureTensor operator*(double s) const;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t a, std::size_t b) const {
    return ((i * n_ + j) * r_ + a) * r_ + b;
  }
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<Complex> c_;
};

/// Curvature form of an auxiliary line bundle F in the same orthonormal
/// frame of the base.
struct TwistForm {
  HermitianForm theta_F;
};

/// eta_ij = sum_a c[i][j][a][a].
HermitianForm eta(const CurvatureTensor& t);

/// c[i][j][a][b] - (1/r) eta_ij delta_ab.
CurvatureTensor trace_free(const CurvatureTensor& t);

/// r x r form (a,b) -> sum_ij c[i][j][a][b] zeta_i conj(zeta_j).
/// `zeta` must be a unit vector (checked to 1e-10).
HermitianForm q_form(const CurvatureTensor& t, std::span<const Complex> zeta);

/// n x n form (i,j) -> sum_ab c[i][j][a][b] u_a conj(u_b).
HermitianForm base_form(const CurvatureTensor& t, std::span<const Complex> u);

/// g_k(x,u)_ij = sum_s (x_s/s) sum_ab c[i][j][a][b] u_s[a] conj(u_s[b]).
HermitianForm g_k(const CurvatureTensor& t, const SimplexPoint& x, const SphereTuple& u);

/// (sum_s x_s/s) (1/r) eta: the conditional mean of g_k given x.
HermitianForm g_k_mean_given_x(const CurvatureTensor& t, const SimplexPoint& x);

/// (H_k / (k r)) eta.
HermitianForm expected_g_k(const CurvatureTensor& t, unsigned k);

/// (k r / H_k) g_k(x,u) + theta_F.
HermitianForm eta_k(const CurvatureTensor& t, const TwistForm& f, const SimplexPoint& x,
                    const SphereTuple& u);

/// Closed form of E|g_k(zeta) - mean_given_x(zeta)|^2 over (x,u):
/// (r+1)/(k(kr+1)) (sum_{s<=k} 1/s^2) * sphere_second_moment(q_form(trace_free(T), zeta)).
double partial_variance(const CurvatureTensor& t, std::span<const Complex> zeta, unsigned k);

/// One (x,u) draw for a k-jet: the Gamma variate for x_s and the sphere
/// vector u_s are drawn in interleaved order s = 1..k, so the draws for k
/// are a prefix of the draws for any larger k on the same stream.
struct JetSample {
  SimplexPoint x;
  SphereTuple u;
};
JetSample draw_jet_sample(unsigned k, std::size_t r, Stream& rng);

struct SigmaEstimate {
  Estimate squared;          // estimate of sigma^2
  bool trace_free = true;    // false when eta(T) is not ~0; the estimate is then the raw second moment
};

/// sigma^2 = double integral of |<T(zeta,zeta)u,u>|^2 over the unit spheres,
/// with the u-integral in closed form and Monte-Carlo over zeta.
SigmaEstimate sigma_variance(const CurvatureTensor& t, std::size_t n_zeta, std::uint64_t seed,
                             unsigned workers = 1);

/// Lower estimate of sup |form(zeta,u)| over unit zeta, u by alternating
/// top-eigenvector steps, best over `restarts` random starts.
double sup_norm(const CurvatureTensor& t, std::size_t restarts, std::uint64_t seed);

/// {"n":..,"r":..,"c":[[re,im],...]} with c flat in row-major (i,j,a,b).
nlohmann::json tensor_to_json(const CurvatureTensor& t);
/// Inverse of tensor_to_json; ValidationError on bad shape or symmetry.
CurvatureTensor tensor_from_json(const nlohmann::json& j);

}  // namespace jetmorse

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jetmorse/curvature.hpp"
#include "jetmorse/manifold_sample.hpp"
#include "jetmorse/random.hpp"

namespace jetmorse {

/// Smooth complete intersection of multidegree (d_1..d_s) in P^{n+s}, with
/// twist F = O(-a).
struct CompleteIntersectionSpec {
  unsigned n = 0;
  unsigned s = 0;
  std::vector<unsigned> degrees;
  double a = 0.0;

  std::uint64_t degree_sum() const;
};

/// Second fundamental form beta: (zeta, u) -> C^s, bilinear, stored as
/// coefficients B[t][i][a] with beta(zeta).u = sum_{i,a} B[t][i][a] zeta_i u_a.
class SecondFundamentalForm {
 public:
  SecondFundamentalForm(std::size_t n, std::size_t r, std::size_t s, std::vector<Complex> coeffs);

  static SecondFundamentalForm zero(std::size_t n, std::size_t r, std::size_t s);
  /// Tabulates a user-supplied bilinear map on basis vectors.
  static SecondFundamentalForm from_callback(
      std::size_t n, std::size_t r, std::size_t s,
      const std::function<ComplexVector(std::span<const Complex>, std::span<const Complex>)>& beta);

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  std::size_t s() const { return s_; }
  Complex operator()(std::size_t t, std::size_t i, std::size_t a) const { return b_[(t * n_ + i) * r_ + a]; }

  ComplexVector apply(std::span<const Complex> zeta, std::span<const Complex> u) const;
  /// beta(zeta).u == beta(u).zeta, required when V = T_X.
  bool is_symmetric(double tol) const;
  /// Tr(beta beta^*) as an n x n form: sum_{t,a} B[t][i][a] conj(B[t][j][a]).
  HermitianForm trace_form() const;
  SecondFundamentalForm operator*(double s) const;

 private:
  std::size_t n_, r_, s_;
  std::vector<Complex> b_;
};

/// Tensor of T_{P^n} with the Fubini-Study metric:
/// -sum c zeta zeta^* u u^* = |zeta|^2 |u|^2 + |<zeta,u>|^2, eta = -(n+1) Id.
CurvatureTensor fubini_study_tensor(std::size_t n);

/// Tensor of T_X for a submanifold X of projective space:
/// -sum c zeta zeta^* u u^* = |zeta|^2 |u|^2 + |<zeta,u>|^2 - |beta(zeta).u|^2.
CurvatureTensor hypersurface_tensor(const SecondFundamentalForm& ff, std::size_t n);

/// Second fundamental form of {P = 0} in P^{N-1} at a point, from the
/// ambient gradient and Hessian of P at that point (point normalized to unit
/// length by the caller's data). `frame` receives the N x n orthonormal
/// horizontal frame used for the tangent coordinates.
SecondFundamentalForm hypersurface_second_fundamental_form(const ComplexVector& unit_point,
                                                           const ComplexVector& gradient,
                                                           const Eigen::MatrixXcd& hessian,
                                                           Eigen::MatrixXcd* frame = nullptr);

/// Second fundamental form of the Fermat hypersurface sum z_j^d = 0 in
/// P^{n+1} at `point` (n+2 homogeneous coordinates). DomainError if the
/// point is off the hypersurface or singular.
SecondFundamentalForm fermat_second_fundamental_form(std::size_t n, unsigned d, const ComplexVector& point,
                                                     Eigen::MatrixXcd* frame = nullptr);

/// The d intersection points (unit representatives) of a random complex line
/// with the Fermat hypersurface of degree d in P^{n+1}. Counting measure on
/// these points, averaged over unitarily invariant random lines, is d times
/// the normalized Fubini-Study volume of the hypersurface.
std::vector<ComplexVector> fermat_line_points(std::size_t n, unsigned d, Stream& rng);

/// Equal-weight quadrature of the Fermat hypersurface from `lines` random
/// lines; total weight 1. A positive `twist_a` attaches Theta_F = -a Id.
ManifoldSample fermat_manifold_sample(std::size_t n, unsigned d, std::size_t lines, std::uint64_t seed,
                                      double twist_a = 0.0);

/// Hermitian-symmetric tensor with complex Gaussian entries of the given
/// scale (scale 0 gives the zero tensor).
CurvatureTensor random_tensor(std::size_t n, std::size_t r, double scale, std::uint64_t seed);

/// `points` random tensors with equal weights summing to 1.
ManifoldSample random_manifold_sample(std::size_t n, std::size_t r, std::size_t points, double scale,
                                      std::uint64_t seed);

/// `points` copies of the Fubini-Study tensor of P^n, equal weights.
ManifoldSample fubini_study_sample(std::size_t n, std::size_t points);

/// Natural log of the sufficient jet order:
/// 7.38 n^{n+1/2} ((sum d + 1) / (sum d - n - s - a - 1))^n.
/// DomainError unless sum d > n + s + a + 1.
double ci_threshold(const CompleteIntersectionSpec& spec);

/// The large-degree limit 7.38 n^{n+1/2}.
double ci_threshold_limit(unsigned n);

struct JBoundOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  /// omega = omega_scale * h: norms are divided by omega_scale and the
  /// volume element multiplied by omega_scale^n.
  double omega_scale = 1.0;
};

/// Quadrature value of
///   n r^{1/2} (sum_{s<=k} 1/s^2)^{1/2} sum_p w_p ||T~|| sum_{i=1}^{n-1} r^i ||T||^i ||eta||^{n-1-i}.
double j_bound(const ManifoldSample& m, unsigned k, const JBoundOptions& opts = {});

}  // namespace jetmorse

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jetmorse {

using Complex = std::complex<double>;

/// A hermitian n x n matrix H. The associated quadratic form is
///   Q_H(zeta) = sum_{ij} H_ij zeta_i conj(zeta_j),
/// which is the convention used for every (1,1)-form in this library.
class HermitianForm {
 public:
  HermitianForm() = default;
  /// Validates H_ij == conj(H_ji) to 1e-12 relative; the stored matrix is
  /// the exact hermitian part (H + H^*)/2.
  explicit HermitianForm(const Eigen::MatrixXcd& m);

  static HermitianForm zero(std::size_t n);
  static HermitianForm identity(std::size_t n);
  static HermitianForm diagonal(std::span<const double> d);
  static HermitianForm diagonal(std::initializer_list<double> d);

  std::size_t dim() const { return std::size_t(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(Eigen::Index(i), Eigen::Index(j)); }

  double trace() const { return m_.trace().real(); }
  /// Q_H(zeta) = sum H_ij zeta_i conj(zeta_j) (always real).
  double quadratic(std::span<const Complex> zeta) const;

  HermitianForm operator+(const HermitianForm& o) const;
  HermitianForm operator-(const HermitianForm& o) const;
  HermitianForm operator*(double s) const;
  friend HermitianForm operator*(double s, const HermitianForm& h) { return h * s; }

 private:
  struct Trusted {};
  HermitianForm(Eigen::MatrixXcd m, Trusted) : m_(std::move(m)) {}
  Eigen::MatrixXcd m_;
};

/// Ascending eigenvalues. NumericalError if the solver does not converge.
std::vector<double> eigenvalues(const HermitianForm& a);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Eigen::MatrixXcd vectors;    // columns are unit eigenvectors of matrix()
};
EigenDecomposition eigen_decompose(const HermitianForm& a);

struct Signature {
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Counts of eigenvalues > tol, < -tol and in [-tol, tol].
Signature signature(const HermitianForm& a, double tol);
Signature signature_of(std::span<const double> ascending_eigenvalues, double tol);

/// max |lambda_i|.
double operator_norm(const HermitianForm& a);

/// 1e-9 * max(1, ||A||).
double default_tolerance(const HermitianForm& a);

/// Outcome of 1_{A,q} det A together with whether A fell in the
/// degenerate tolerance band.
struct IndexedDeterminant {
  double value = 0.0;
  bool degenerate = false;
};

IndexedDeterminant indexed_determinant(std::span<const double> ascending_eigenvalues,
                                       std::size_t q, double tol);

/// det(A) if A has exactly q eigenvalues < -tol and dim-q eigenvalues > tol,
/// else 0. A negative tol selects default_tolerance(A).
double signed_index_det(const HermitianForm& a, std::size_t q, double tol = -1.0);

/// Checks |1_{A,q} det A - 1_{B,q} det B| <= ||A-B|| sum_i ||A||^i ||B||^{n-1-i}
/// (with a relative rounding slack of 1e-10).
bool det_diff_bound_holds(const HermitianForm& a, const HermitianForm& b, std::size_t q);

/// Integral of |Q_A(zeta)|^2 over the unit sphere of C^n:
/// (sum lambda_i^2 + (sum lambda_i)^2) / (n (n+1)).
double sphere_second_moment(const HermitianForm& a);

/// A - (tr A / n) Id.
HermitianForm trace_free_part(const HermitianForm& a);

}  // namespace jetmorse

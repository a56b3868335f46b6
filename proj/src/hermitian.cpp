#include "jetmorse/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "jetmorse/error.hpp"

namespace jetmorse {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& solve(const HermitianForm& a,
                                                             Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& solver,
                                                             bool vectors) {
  solver.compute(a.matrix(), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver;
}

}  // namespace

HermitianForm::HermitianForm(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ValidationError("HermitianForm: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (m.size() > 0 && !(asym <= kSymmetryTolerance * scale))
    throw ValidationError("HermitianForm: matrix is not hermitian (asymmetry " + std::to_string(asym) + ")");
  if (!m.allFinite()) throw ValidationError("HermitianForm: non-finite entry");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianForm HermitianForm::zero(std::size_t n) {
  return {Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n)), Trusted{}};
}

HermitianForm HermitianForm::identity(std::size_t n) {
  return {Eigen::MatrixXcd::Identity(Eigen::Index(n), Eigen::Index(n)), Trusted{}};
}

HermitianForm HermitianForm::diagonal(std::span<const double> d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(d.size()), Eigen::Index(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = d[i];
  return {std::move(m), Trusted{}};
}

HermitianForm HermitianForm::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

double HermitianForm::quadratic(std::span<const Complex> zeta) const {
  if (zeta.size() != dim()) throw ValidationError("quadratic form: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) acc += (*this)(i, j) * zeta[i] * std::conj(zeta[j]);
  return acc.real();
}

HermitianForm HermitianForm::operator+(const HermitianForm& o) const {
  if (o.dim() != dim()) throw ValidationError("HermitianForm +: dimension mismatch");
  return {m_ + o.m_, Trusted{}};
}

HermitianForm HermitianForm::operator-(const HermitianForm& o) const {
  if (o.dim() != dim()) throw ValidationError("HermitianForm -: dimension mismatch");
  return {m_ - o.m_, Trusted{}};
}

HermitianForm HermitianForm::operator*(double s) const { return {m_ * s, Trusted{}}; }

std::vector<double> eigenvalues(const HermitianForm& a) {
  if (a.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solve(a, solver, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

EigenDecomposition eigen_decompose(const HermitianForm& a) {
  if (a.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solve(a, solver, true);
  const auto& ev = solver.eigenvalues();
  return {{ev.data(), ev.data() + ev.size()}, solver.eigenvectors()};
}

Signature signature_of(std::span<const double> ev, double tol) {
  Signature s;
  for (double l : ev) {
    if (l > tol) {
      ++s.plus;
    } else if (l < -tol) {
      ++s.minus;
    } else {
      ++s.zero;
    }
  }
  return s;
}

Signature signature(const HermitianForm& a, double tol) {
  if (tol < 0) throw ValidationError("signature: tolerance must be nonnegative");
  return signature_of(eigenvalues(a), tol);
}

double operator_norm(const HermitianForm& a) {
  const auto ev = eigenvalues(a);
  if (ev.empty()) return 0.0;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double default_tolerance(const HermitianForm& a) { return 1e-9 * std::max(1.0, operator_norm(a)); }

IndexedDeterminant indexed_determinant(std::span<const double> ev, std::size_t q, double tol) {
  const Signature s = signature_of(ev, tol);
  IndexedDeterminant out;
  out.degenerate = s.zero > 0;
  if (s.zero == 0 && s.minus == q) {
    double det = 1.0;
    for (double l : ev) det *= l;
    out.value = det;
  }
  return out;
}

double signed_index_det(const HermitianForm& a, std::size_t q, double tol) {
  if (q > a.dim()) return 0.0;
  const auto ev = eigenvalues(a);
  if (tol < 0) tol = 1e-9 * std::max(1.0, ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back())));
  return indexed_determinant(ev, q, tol).value;
}

bool det_diff_bound_holds(const HermitianForm& a, const HermitianForm& b, std::size_t q) {
  if (a.dim() != b.dim()) throw ValidationError("det_diff_bound_holds: dimension mismatch");
  const std::size_t n = a.dim();
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  const double lhs = std::abs(signed_index_det(a, q, 0.0) - signed_index_det(b, q, 0.0));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::pow(na, double(i)) * std::pow(nb, double(n - 1 - i));
  const double rhs = operator_norm(a - b) * sum;
  const double scale = std::pow(std::max({na, nb, 1.0}), double(n));
  return lhs <= rhs + 1e-10 * scale;
}

double sphere_second_moment(const HermitianForm& a) {
  const auto ev = eigenvalues(a);
  const double n = double(a.dim());
  double s1 = 0.0;
  double s2 = 0.0;
  for (double l : ev) {
    s1 += l;
    s2 += l * l;
  }
  return (s2 + s1 * s1) / (n * (n + 1.0));
}

HermitianForm trace_free_part(const HermitianForm& a) {
  return a - HermitianForm::identity(a.dim()) * (a.trace() / double(a.dim()));
}

}  // namespace jetmorse

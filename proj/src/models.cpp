#include "jetmorse/models.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numeric>
#include <sstream>

#include "jetmorse/error.hpp"
#include "jetmorse/hermitian.hpp"
#include "jetmorse/jet_combinatorics.hpp"

namespace jetmorse {

namespace {

constexpr double kThresholdConstant = 7.38;

double binomial(unsigned d, unsigned m) {
  double c = 1.0;
  for (unsigned i = 1; i <= m; ++i) c = c * double(d - m + i) / double(i);
  return c;
}

Complex fermat_value(const ComplexVector& z, unsigned d) {
  Complex acc = 0.0;
  for (const auto& c : z) acc += std::pow(c, int(d));
  return acc;
}

// Roots of sum_m coeffs[m] t^m (coeffs[deg] != 0) via the companion matrix.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(Eigen::Index(deg), Eigen::Index(deg));
  for (std::size_t i = 1; i < deg; ++i) companion(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion(Eigen::Index(i), Eigen::Index(deg - 1)) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("polynomial root finder did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ComplexVector normalized(ComplexVector v) {
  double n2 = 0.0;
  for (const auto& c : v) n2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

}  // namespace

std::uint64_t CompleteIntersectionSpec::degree_sum() const {
  return std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
}

SecondFundamentalForm::SecondFundamentalForm(std::size_t n, std::size_t r, std::size_t s, std::vector<Complex> coeffs)
    : n_(n), r_(r), s_(s), b_(std::move(coeffs)) {
  if (n == 0 || r == 0) throw ValidationError("SecondFundamentalForm: n and r must be positive");
  if (b_.size() != s * n * r) throw ValidationError("SecondFundamentalForm: expected s*n*r coefficients");
}

SecondFundamentalForm SecondFundamentalForm::zero(std::size_t n, std::size_t r, std::size_t s) {
  return SecondFundamentalForm(n, r, s, std::vector<Complex>(s * n * r));
}

SecondFundamentalForm SecondFundamentalForm::from_callback(
    std::size_t n, std::size_t r, std::size_t s,
    const std::function<ComplexVector(std::span<const Complex>, std::span<const Complex>)>& beta) {
  std::vector<Complex> b(s * n * r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < r; ++a) {
      ComplexVector ei(n), ea(r);
      ei[i] = 1.0;
      ea[a] = 1.0;
      const ComplexVector v = beta(ei, ea);
      if (v.size() != s) throw ValidationError("SecondFundamentalForm: callback returned wrong codimension");
      for (std::size_t t = 0; t < s; ++t) b[(t * n + i) * r + a] = v[t];
    }
  return SecondFundamentalForm(n, r, s, std::move(b));
}

ComplexVector SecondFundamentalForm::apply(std::span<const Complex> zeta, std::span<const Complex> u) const {
  if (zeta.size() != n_ || u.size() != r_) throw ValidationError("SecondFundamentalForm::apply: dimension mismatch");
  ComplexVector out(s_);
  for (std::size_t t = 0; t < s_; ++t)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t a = 0; a < r_; ++a) out[t] += (*this)(t, i, a) * zeta[i] * u[a];
  return out;
}

bool SecondFundamentalForm::is_symmetric(double tol) const {
  if (n_ != r_) return false;
  for (std::size_t t = 0; t < s_; ++t)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t a = 0; a < r_; ++a)
        if (std::abs((*this)(t, i, a) - (*this)(t, a, i)) > tol) return false;
  return true;
}

HermitianForm SecondFundamentalForm::trace_form() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n_), Eigen::Index(n_));
  for (std::size_t t = 0; t < s_; ++t)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t a = 0; a < r_; ++a)
          m(Eigen::Index(i), Eigen::Index(j)) += (*this)(t, i, a) * std::conj((*this)(t, j, a));
  return HermitianForm(m);
}

SecondFundamentalForm SecondFundamentalForm::operator*(double s) const {
  SecondFundamentalForm out = *this;
  for (auto& c : out.b_) c *= s;
  return out;
}

CurvatureTensor fubini_study_tensor(std::size_t n) {
  if (n == 0) throw ValidationError("fubini_study_tensor: n must be positive");
  // c[i][j][a][b] = -(delta_ij delta_ab + delta_ib delta_ja)
  std::vector<Complex> c(n * n * n * n);
  auto at = [n](std::size_t i, std::size_t j, std::size_t a, std::size_t b) { return ((i * n + j) * n + a) * n + b; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) c[at(i, i, a, a)] -= 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[at(i, j, j, i)] -= 1.0;
  return CurvatureTensor(n, n, std::move(c));
}

CurvatureTensor hypersurface_tensor(const SecondFundamentalForm& ff, std::size_t n) {
  if (ff.n() != n || ff.r() != n) throw ValidationError("hypersurface_tensor: second fundamental form has wrong dimensions");
  const CurvatureTensor fs = fubini_study_tensor(n);
  std::vector<Complex> c(fs.coefficients().begin(), fs.coefficients().end());
  // + sum_t B[t][i][a] conj(B[t][j][b])
  for (std::size_t t = 0; t < ff.s(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            c[((i * n + j) * n + a) * n + b] += ff(t, i, a) * std::conj(ff(t, j, b));
  return CurvatureTensor(n, n, std::move(c));
}

SecondFundamentalForm hypersurface_second_fundamental_form(const ComplexVector& z, const ComplexVector& gradient,
                                                           const Eigen::MatrixXcd& hessian, Eigen::MatrixXcd* frame) {
  const std::size_t big_n = z.size();
  if (big_n < 3 || gradient.size() != big_n || std::size_t(hessian.rows()) != big_n || std::size_t(hessian.cols()) != big_n)
    throw ValidationError("hypersurface_second_fundamental_form: inconsistent dimensions");
  const std::size_t n = big_n - 2;
  double gnorm2 = 0.0;
  for (const auto& g : gradient) gnorm2 += std::norm(g);
  const double gnorm = std::sqrt(gnorm2);
  if (!(gnorm > 1e-12)) throw DomainError("hypersurface point is singular (vanishing gradient)");

  // horizontal tangent space: orthogonal complement of {z, conj(grad P)}
  Eigen::MatrixXcd span(Eigen::Index(big_n), 2);
  for (std::size_t j = 0; j < big_n; ++j) {
    span(Eigen::Index(j), 0) = z[j];
    span(Eigen::Index(j), 1) = std::conj(gradient[j]) / gnorm;
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(Eigen::Index(big_n), Eigen::Index(big_n));
  const Eigen::MatrixXcd e = q.rightCols(Eigen::Index(n));
  if (frame) *frame = e;

  // beta(e_i).e_a = e_i^T Hess e_a / |grad P|
  const Eigen::MatrixXcd b = e.transpose() * hessian * e / gnorm;
  std::vector<Complex> coeffs(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) coeffs[i * n + a] = b(Eigen::Index(i), Eigen::Index(a));
  return SecondFundamentalForm(n, n, 1, std::move(coeffs));
}

SecondFundamentalForm fermat_second_fundamental_form(std::size_t n, unsigned d, const ComplexVector& point,
                                                     Eigen::MatrixXcd* frame) {
  if (point.size() != n + 2) throw ValidationError("fermat_second_fundamental_form: point needs n+2 coordinates");
  if (d == 0) throw ValidationError("fermat_second_fundamental_form: degree must be positive");
  const ComplexVector z = normalized(point);
  if (std::abs(fermat_value(z, d)) > 1e-10) throw DomainError("fermat_second_fundamental_form: point is not on the hypersurface");
  ComplexVector grad(n + 2);
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(Eigen::Index(n + 2), Eigen::Index(n + 2));
  for (std::size_t j = 0; j < n + 2; ++j) {
    grad[j] = double(d) * std::pow(z[j], int(d) - 1);
    if (d >= 2) hess(Eigen::Index(j), Eigen::Index(j)) = double(d) * double(d - 1) * std::pow(z[j], int(d) - 2);
  }
  return hypersurface_second_fundamental_form(z, grad, hess, frame);
}

std::vector<ComplexVector> fermat_line_points(std::size_t n, unsigned d, Stream& rng) {
  const std::size_t big_n = n + 2;
  for (;;) {
    ComplexVector a(big_n), b(big_n);
    for (auto& c : a) c = complex_normal(rng);
    for (auto& c : b) c = complex_normal(rng);
    // P(a + t b) = sum_m C(d,m) (sum_j a_j^{d-m} b_j^m) t^m
    std::vector<Complex> coeffs(d + 1);
    for (unsigned m = 0; m <= d; ++m) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < big_n; ++j) acc += std::pow(a[j], int(d - m)) * std::pow(b[j], int(m));
      coeffs[m] = binomial(d, m) * acc;
    }
    if (std::abs(coeffs[d]) < 1e-12) continue;  // root at infinity: redraw the line
    std::vector<ComplexVector> out;
    bool ok = true;
    for (Complex t : polynomial_roots(coeffs)) {
      // Newton polish on the normalized point
      for (int it = 0; it < 8; ++it) {
        Complex p = 0.0, dp = 0.0;
        for (unsigned m = d + 1; m-- > 0;) {
          dp = dp * t + p;
          p = p * t + coeffs[m];
        }
        if (dp == Complex(0.0)) break;
        t -= p / dp;
      }
      ComplexVector z(big_n);
      for (std::size_t j = 0; j < big_n; ++j) z[j] = a[j] + t * b[j];
      z = normalized(std::move(z));
      if (std::abs(fermat_value(z, d)) > 1e-11) {
        ok = false;
        break;
      }
      out.push_back(std::move(z));
    }
    if (ok) return out;
  }
}

ManifoldSample fermat_manifold_sample(std::size_t n, unsigned d, std::size_t lines, std::uint64_t seed,
                                      double twist_a) {
  if (lines == 0) throw ValidationError("fermat_manifold_sample: need at least one line");
  std::vector<SamplePoint> pts;
  pts.reserve(lines * d);
  const double w = 1.0 / double(lines * d);
  for (std::size_t l = 0; l < lines; ++l) {
    Stream rng = Stream::keyed(seed, {0xfe, l});
    for (const auto& z : fermat_line_points(n, d, rng)) {
      SamplePoint p;
      p.id = pts.size();
      p.tensor = hypersurface_tensor(fermat_second_fundamental_form(n, d, z), n);
      p.weight = w;
      if (twist_a != 0.0) p.twist = TwistForm{HermitianForm::identity(n) * (-twist_a)};
      pts.push_back(std::move(p));
    }
  }
  return ManifoldSample(std::move(pts));
}

CurvatureTensor random_tensor(std::size_t n, std::size_t r, double scale, std::uint64_t seed) {
  if (!(scale >= 0.0)) throw ValidationError("random_tensor: scale must be nonnegative");
  Stream rng = Stream::keyed(seed, {0x7e});
  std::vector<Complex> raw(n * n * r * r);
  for (auto& c : raw) c = complex_normal(rng) * scale;
  std::vector<Complex> sym(raw.size());
  auto at = [n, r](std::size_t i, std::size_t j, std::size_t a, std::size_t b) { return ((i * n + j) * r + a) * r + b; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          sym[at(i, j, a, b)] = 0.5 * (raw[at(i, j, a, b)] + std::conj(raw[at(j, i, b, a)]));
  return CurvatureTensor(n, r, std::move(sym));
}

ManifoldSample random_manifold_sample(std::size_t n, std::size_t r, std::size_t points, double scale,
                                      std::uint64_t seed) {
  if (points == 0) throw ValidationError("random_manifold_sample: need at least one point");
  std::vector<SamplePoint> pts(points);
  for (std::size_t p = 0; p < points; ++p) {
    pts[p].id = p;
    pts[p].tensor = random_tensor(n, r, scale, Stream::keyed(seed, {0x4d, p}).key());
    pts[p].weight = 1.0 / double(points);
  }
  return ManifoldSample(std::move(pts));
}

ManifoldSample fubini_study_sample(std::size_t n, std::size_t points) {
  if (points == 0) throw ValidationError("fubini_study_sample: need at least one point");
  std::vector<SamplePoint> pts(points);
  const CurvatureTensor t = fubini_study_tensor(n);
  for (std::size_t p = 0; p < points; ++p) {
    pts[p].id = p;
    pts[p].tensor = t;
    pts[p].weight = 1.0 / double(points);
  }
  return ManifoldSample(std::move(pts));
}

double ci_threshold(const CompleteIntersectionSpec& spec) {
  if (spec.n == 0) throw ValidationError("ci_threshold: n must be positive");
  if (spec.degrees.size() != spec.s) throw ValidationError("ci_threshold: need exactly s degrees");
  for (unsigned d : spec.degrees)
    if (d == 0) throw ValidationError("ci_threshold: degrees must be positive");
  if (!(spec.a >= 0.0)) throw ValidationError("ci_threshold: twist a must be nonnegative");
  const double sum = double(spec.degree_sum());
  const double margin = sum - double(spec.n + spec.s) - spec.a - 1.0;
  if (!(margin > 0.0)) {
    std::ostringstream msg;
    msg << "general-type condition violated: sum d_j = " << sum << " must exceed n + s + a + 1 = "
        << double(spec.n + spec.s) + spec.a + 1.0;
    throw DomainError(msg.str());
  }
  return ci_threshold_limit(spec.n) * std::pow((sum + 1.0) / margin, double(spec.n));
}

double ci_threshold_limit(unsigned n) {
  return kThresholdConstant * std::pow(double(n), double(n) + 0.5);
}

double j_bound(const ManifoldSample& m, unsigned k, const JBoundOptions& opts) {
  if (k == 0) throw ValidationError("j_bound: k must be positive");
  const std::size_t n = m.n();
  const double r = double(m.r());
  const double c = opts.omega_scale;
  if (!(c > 0.0)) throw ValidationError("j_bound: omega_scale must be positive");
  std::vector<double> terms;
  terms.reserve(m.size());
  for (const auto& p : m.points()) {
    const double tf = sup_norm(trace_free(p.tensor), opts.restarts, opts.seed) / c;
    double inner = 0.0;
    if (n >= 2 && tf > 0.0) {
      const double full = sup_norm(p.tensor, opts.restarts, opts.seed) / c;
      const double e = operator_norm(twisted_eta(p)) / c;
      for (std::size_t i = 1; i < n; ++i)
        inner += std::pow(r, double(i)) * std::pow(full, double(i)) * std::pow(e, double(n - 1 - i));
    }
    terms.push_back(p.weight * std::pow(c, double(n)) * tf * inner);
  }
  return double(n) * std::sqrt(r) * std::sqrt(inverse_square_sum(k)) * pairwise_sum(terms);
}

}  // namespace jetmorse

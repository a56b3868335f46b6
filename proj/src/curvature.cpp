#include "jetmorse/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "jetmorse/error.hpp"
#include "jetmorse/jet_combinatorics.hpp"
#include "jetmorse/parallel.hpp"

namespace jetmorse {

namespace {

constexpr double kTensorSymmetryTolerance = 1e-12;

void require_unit(std::span<const Complex> v, const char* what) {
  double n2 = 0.0;
  for (const auto& c : v) n2 += std::norm(c);
  if (std::abs(n2 - 1.0) > 1e-10) throw ValidationError(std::string(what) + ": vector is not a unit vector");
}

// Top-|eigenvalue| eigenpair.
std::pair<double, Eigen::VectorXcd> dominant(const HermitianForm& h) {
  EigenDecomposition d = eigen_decompose(h);
  const Eigen::Index last = Eigen::Index(d.values.size()) - 1;
  if (std::abs(d.values.front()) > std::abs(d.values.back())) return {std::abs(d.values.front()), d.vectors.col(0)};
  return {std::abs(d.values.back()), d.vectors.col(last)};
}

std::vector<Complex> conj_of(const Eigen::VectorXcd& v) {
  std::vector<Complex> out(std::size_t(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[std::size_t(i)] = std::conj(v(i));
  return out;
}

}  // namespace

CurvatureTensor::CurvatureTensor(std::size_t n, std::size_t r, std::vector<Complex> coeffs)
    : n_(n), r_(r), c_(std::move(coeffs)) {
  if (n == 0 || r == 0) throw ValidationError("CurvatureTensor: n and r must be positive");
  if (c_.size() != n * n * r * r) throw ValidationError("CurvatureTensor: expected n*n*r*r coefficients");
  double scale = 1.0;
  for (const auto& c : c_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ValidationError("CurvatureTensor: non-finite coefficient");
    scale = std::max(scale, std::abs(c));
  }
  std::vector<Complex> sym(c_.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          const Complex x = c_[index(i, j, a, b)];
          const Complex y = std::conj(c_[index(j, i, b, a)]);
          if (std::abs(x - y) > kTensorSymmetryTolerance * scale)
            throw ValidationError("CurvatureTensor: hermitian symmetry c[i][j][a][b] = conj(c[j][i][b][a]) violated");
          sym[index(i, j, a, b)] = 0.5 * (x + y);
        }
  c_ = std::move(sym);
}

CurvatureTensor CurvatureTensor::zero(std::size_t n, std::size_t r) {
  return CurvatureTensor(n, r, std::vector<Complex>(n * n * r * r));
}

CurvatureTensor CurvatureTensor::unit(std::size_t n, std::size_t r) {
  std::vector<Complex> c(n * n * r * r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < r; ++a) c[((i * n + i) * r + a) * r + a] = 1.0;
  return CurvatureTensor(n, r, std::move(c));
}

double CurvatureTensor::form(std::span<const Complex> zeta, std::span<const Complex> u) const {
  if (zeta.size() != n_ || u.size() != r_) throw ValidationError("CurvatureTensor::form: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const Complex zz = zeta[i] * std::conj(zeta[j]);
      for (std::size_t a = 0; a < r_; ++a)
        for (std::size_t b = 0; b < r_; ++b) acc += c_[index(i, j, a, b)] * zz * u[a] * std::conj(u[b]);
    }
  return acc.real();
}

CurvatureTensor CurvatureTensor::operator+(const CurvatureTensor& o) const {
  if (o.n_ != n_ || o.r_ != r_) throw ValidationError("CurvatureTensor +: shape mismatch");
  CurvatureTensor out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
  return out;
}

CurvatureTensor CurvatureTensor::operator*(double s) const {
  CurvatureTensor out = *this;
  for (auto& c : out.c_) c *= s;
  return out;
}

HermitianForm eta(const CurvatureTensor& t) {
  const std::size_t n = t.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < t.r(); ++a) m(Eigen::Index(i), Eigen::Index(j)) += t(i, j, a, a);
  return HermitianForm(m);
}

CurvatureTensor trace_free(const CurvatureTensor& t) {
  const HermitianForm e = eta(t);
  const std::size_t n = t.n();
  const std::size_t r = t.r();
  std::vector<Complex> c(t.coefficients().begin(), t.coefficients().end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < r; ++a) c[((i * n + j) * r + a) * r + a] -= e(i, j) / double(r);
  return CurvatureTensor(n, r, std::move(c));
}

HermitianForm q_form(const CurvatureTensor& t, std::span<const Complex> zeta) {
  if (zeta.size() != t.n()) throw ValidationError("q_form: zeta has wrong dimension");
  require_unit(zeta, "q_form");
  const std::size_t r = t.r();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(r), Eigen::Index(r));
  for (std::size_t i = 0; i < t.n(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j) {
      const Complex zz = zeta[i] * std::conj(zeta[j]);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) m(Eigen::Index(a), Eigen::Index(b)) += t(i, j, a, b) * zz;
    }
  return HermitianForm(m);
}

HermitianForm base_form(const CurvatureTensor& t, std::span<const Complex> u) {
  if (u.size() != t.r()) throw ValidationError("base_form: u has wrong dimension");
  const std::size_t n = t.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t a = 0; a < t.r(); ++a)
    for (std::size_t b = 0; b < t.r(); ++b) {
      const Complex uu = u[a] * std::conj(u[b]);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(Eigen::Index(i), Eigen::Index(j)) += t(i, j, a, b) * uu;
    }
  return HermitianForm(m);
}

HermitianForm g_k(const CurvatureTensor& t, const SimplexPoint& x, const SphereTuple& u) {
  if (x.size() != u.size()) throw ValidationError("g_k: x and u have different lengths");
  const std::size_t n = t.n();
  const std::size_t r = t.r();
  // accumulate W_ab = sum_s (x_s/s) u_s[a] conj(u_s[b]) first, then contract once
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(Eigen::Index(r), Eigen::Index(r));
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (u.u[s].size() != r) throw ValidationError("g_k: sphere vector has wrong dimension");
    const double weight = x.x[s] / double(s + 1);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) w(Eigen::Index(a), Eigen::Index(b)) += weight * u.u[s][a] * std::conj(u.u[s][b]);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) acc += t(i, j, a, b) * w(Eigen::Index(a), Eigen::Index(b));
      m(Eigen::Index(i), Eigen::Index(j)) = acc;
    }
  return HermitianForm(m);
}

HermitianForm g_k_mean_given_x(const CurvatureTensor& t, const SimplexPoint& x) {
  return eta(t) * (x.harmonic_weight() / double(t.r()));
}

HermitianForm expected_g_k(const CurvatureTensor& t, unsigned k) {
  if (k == 0) throw ValidationError("expected_g_k: k must be positive");
  const double factor = to_double(harmonic(k) / Rational(Integer(k) * t.r()));
  return eta(t) * factor;
}

HermitianForm eta_k(const CurvatureTensor& t, const TwistForm& f, const SimplexPoint& x,
                    const SphereTuple& u) {
  const unsigned k = unsigned(x.size());
  if (f.theta_F.dim() != t.n()) throw ValidationError("eta_k: twist has wrong dimension");
  const double factor = to_double(Rational(Integer(k) * t.r()) / harmonic(k));
  return g_k(t, x, u) * factor + f.theta_F;
}

double partial_variance(const CurvatureTensor& t, std::span<const Complex> zeta, unsigned k) {
  const double r = double(t.r());
  const double kd = double(k);
  return (r + 1.0) / (kd * (kd * r + 1.0)) * inverse_square_sum(k) *
         sphere_second_moment(q_form(trace_free(t), zeta));
}

JetSample draw_jet_sample(unsigned k, std::size_t r, Stream& rng) {
  JetSample s;
  s.x.x.resize(k);
  s.u.u.reserve(k);
  double total = 0.0;
  for (unsigned i = 0; i < k; ++i) {
    s.x.x[i] = k == 1 ? 1.0 : gamma_draw(rng, double(r));
    total += s.x.x[i];
    s.u.u.push_back(sample_sphere(r, rng));
  }
  for (double& v : s.x.x) v /= total;
  return s;
}

SigmaEstimate sigma_variance(const CurvatureTensor& t, std::size_t n_zeta, std::uint64_t seed,
                             unsigned workers) {
  if (n_zeta < 2) throw ValidationError("sigma_variance: need at least 2 samples");
  SigmaEstimate out;
  const HermitianForm e = eta(t);
  double scale = 1.0;
  for (const auto& c : t.coefficients()) scale = std::max(scale, std::abs(c));
  out.trace_free = operator_norm(e) <= 1e-10 * scale * double(t.r());
  std::vector<double> values(n_zeta);
  parallel_for(n_zeta, workers, [&](std::size_t m) {
    Stream rng = Stream::keyed(seed, {m});
    const auto zeta = sample_sphere(t.n(), rng);
    values[m] = sphere_second_moment(q_form(t, zeta));
  });
  out.squared = mean_estimate(values);
  return out;
}

double sup_norm(const CurvatureTensor& t, std::size_t restarts, std::uint64_t seed) {
  if (restarts == 0) throw ValidationError("sup_norm: need at least one restart");
  double best = 0.0;
  for (std::size_t rs = 0; rs < restarts; ++rs) {
    Stream rng = Stream::keyed(seed, {0x5u, rs});
    auto zeta = sample_sphere(t.n(), rng);
    auto u = sample_sphere(t.r(), rng);
    double value = std::abs(t.form(zeta, u));
    for (int iter = 0; iter < 500; ++iter) {
      // value(zeta) = v^* base_form(u) v with v = conj(zeta), and likewise for u
      zeta = conj_of(dominant(base_form(t, u)).second);
      auto [next, top] = dominant(q_form(t, zeta));
      u = conj_of(top);
      const bool stalled = next - value <= 1e-10 * std::max(1.0, next);
      value = std::max(value, next);
      if (stalled) break;
    }
    best = std::max(best, value);
  }
  return best;
}

nlohmann::json tensor_to_json(const CurvatureTensor& t) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& v : t.coefficients()) c.push_back({v.real(), v.imag()});
  return {{"n", t.n()}, {"r", t.r()}, {"c", std::move(c)}};
}

CurvatureTensor tensor_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto r = j.at("r").get<std::size_t>();
    const auto& c = j.at("c");
    if (!c.is_array()) throw ValidationError("tensor JSON: c must be an array");
    std::vector<Complex> coeffs;
    coeffs.reserve(c.size());
    for (const auto& pair : c) {
      if (!pair.is_array() || pair.size() != 2) throw ValidationError("tensor JSON: each coefficient must be [re, im]");
      coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return CurvatureTensor(n, r, std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("tensor JSON: ") + e.what());
  }
}

}  // namespace jetmorse

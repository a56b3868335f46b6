#include <cmath>

#include "doctest.h"

#include "jetmorse/curvature.hpp"
#include "jetmorse/error.hpp"
#include "jetmorse/jet_combinatorics.hpp"
#include "jetmorse/models.hpp"

using namespace jetmorse;

namespace {

bool same(const HermitianForm& a, const HermitianForm& b, double tol) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Complex> unit_vector(std::size_t n, Stream& rng) { return sample_sphere(n, rng); }

}  // namespace

TEST_CASE("tensor validation") {
  std::vector<Complex> c(1 * 1 * 2 * 2, 0.0);
  c[1] = Complex(1, 0);  // (0,0,0,1) without its conjugate partner
  CHECK_THROWS_AS(CurvatureTensor(1, 2, c), ValidationError);
  c[2] = Complex(1, 0);
  CHECK_NOTHROW(CurvatureTensor(1, 2, c));
  CHECK_THROWS_AS(CurvatureTensor(1, 2, std::vector<Complex>(3)), ValidationError);
}

TEST_CASE("eta examples") {
  CHECK(operator_norm(eta(CurvatureTensor::zero(3, 2))) == 0.0);
  CHECK(same(eta(fubini_study_tensor(2)), HermitianForm::diagonal({-3, -3}), 1e-14));
  CHECK(same(eta(fubini_study_tensor(1)), HermitianForm::diagonal({-2}), 1e-14));
  const CurvatureTensor t = random_tensor(3, 2, 1.0, 4);
  const Eigen::MatrixXcd e = eta(t).matrix();
  CHECK((e - e.adjoint()).norm() == 0.0);
}

TEST_CASE("trace_free") {
  const CurvatureTensor t = random_tensor(3, 3, 1.0, 9);
  const CurvatureTensor tf = trace_free(t);
  CHECK(operator_norm(eta(tf)) <= 1e-13);
  const CurvatureTensor tf2 = trace_free(tf);
  for (std::size_t i = 0; i < tf.coefficients().size(); ++i)
    CHECK(std::abs(tf.coefficients()[i] - tf2.coefficients()[i]) <= 1e-14);
  const CurvatureTensor fs1 = trace_free(fubini_study_tensor(1));
  for (const auto& c : fs1.coefficients()) CHECK(std::abs(c) <= 1e-15);
}

TEST_CASE("q_form") {
  Stream rng = Stream::keyed(3, {});
  const auto zeta = unit_vector(3, rng);
  CHECK(operator_norm(q_form(CurvatureTensor::zero(3, 2), zeta)) == 0.0);
  CHECK(same(q_form(CurvatureTensor::unit(3, 2), zeta), HermitianForm::identity(2), 1e-14));
  const std::vector<Complex> not_unit{1.0, 1.0, 0.0};
  CHECK_THROWS_AS(q_form(CurvatureTensor::unit(3, 2), not_unit), ValidationError);
  // q_form and base_form both reproduce the scalar form
  const CurvatureTensor t = random_tensor(3, 2, 1.0, 5);
  const auto u = unit_vector(2, rng);
  CHECK(q_form(t, zeta).quadratic(u) == doctest::Approx(t.form(zeta, u)).epsilon(1e-12));
  CHECK(base_form(t, u).quadratic(zeta) == doctest::Approx(t.form(zeta, u)).epsilon(1e-12));
}

TEST_CASE("g_k basic identities") {
  const CurvatureTensor t1 = random_tensor(2, 3, 1.0, 1), t2 = random_tensor(2, 3, 0.5, 2);
  Stream rng = Stream::keyed(4, {});
  const JetSample one = draw_jet_sample(1, 3, rng);
  CHECK(one.x.x == std::vector<double>{1.0});
  CHECK(same(g_k(t1, one.x, one.u), base_form(t1, one.u.u[0]), 1e-14));
  for (unsigned k : {1u, 3u, 7u}) {
    const JetSample s = draw_jet_sample(k, 3, rng);
    CHECK(operator_norm(g_k(CurvatureTensor::zero(2, 3), s.x, s.u)) == 0.0);
    CHECK(same(g_k(t1 + t2, s.x, s.u), g_k(t1, s.x, s.u) + g_k(t2, s.x, s.u), 1e-13));
  }
  const JetSample bad = draw_jet_sample(3, 2, rng);
  CHECK_THROWS_AS(g_k(t1, bad.x, bad.u), ValidationError);
}

TEST_CASE("expected_g_k and eta_k examples") {
  const CurvatureTensor t1 = random_tensor(2, 1, 1.0, 8);
  CHECK(same(expected_g_k(t1, 1), eta(t1), 1e-14));
  CHECK(same(expected_g_k(t1, 2), eta(t1) * 0.75, 1e-14));
  CHECK(operator_norm(expected_g_k(trace_free(random_tensor(2, 2, 1.0, 3)), 5)) <= 1e-13);

  const TwistForm f{HermitianForm::diagonal({0.5, -1.0})};
  const TwistForm zero{HermitianForm::zero(2)};
  Stream rng = Stream::keyed(5, {});
  const JetSample s = draw_jet_sample(4, 1, rng);
  const double scale = 4.0 / to_double(harmonic(4));
  CHECK(same(eta_k(t1, zero, s.x, s.u), g_k(t1, s.x, s.u) * scale, 1e-13));
  CHECK(same(eta_k(CurvatureTensor::zero(2, 1), f, s.x, s.u), f.theta_F, 0.0));
}

TEST_CASE("expectation of g_k and eta_k") {
  constexpr std::size_t N = 100000;
  const CurvatureTensor t = random_tensor(2, 2, 1.0, 21);
  const TwistForm f{HermitianForm::diagonal({0.25, -0.5})};
  const unsigned k = 5;
  std::vector<std::vector<double>> g(8, std::vector<double>(N)), h(8, std::vector<double>(N));
  for (std::size_t m = 0; m < N; ++m) {
    Stream rng = Stream::keyed(31, {m});
    const JetSample s = draw_jet_sample(k, 2, rng);
    const HermitianForm a = g_k(t, s.x, s.u), b = eta_k(t, f, s.x, s.u);
    for (int e = 0; e < 4; ++e) {
      g[2 * e][m] = a(e / 2, e % 2).real();
      g[2 * e + 1][m] = a(e / 2, e % 2).imag();
      h[2 * e][m] = b(e / 2, e % 2).real();
      h[2 * e + 1][m] = b(e / 2, e % 2).imag();
    }
  }
  const HermitianForm eg = expected_g_k(t, k), eh = eta(t) + f.theta_F;
  for (int e = 0; e < 4; ++e) {
    CHECK(mean_estimate(g[2 * e]).within(eg(e / 2, e % 2).real(), 3.0));
    CHECK(mean_estimate(g[2 * e + 1]).within(eg(e / 2, e % 2).imag(), 3.0));
    CHECK(mean_estimate(h[2 * e]).within(eh(e / 2, e % 2).real(), 3.0));
    CHECK(mean_estimate(h[2 * e + 1]).within(eh(e / 2, e % 2).imag(), 3.0));
  }
}

TEST_CASE("partial variance formula") {
  constexpr std::size_t N = 50000;
  for (unsigned r : {1u, 2u, 3u}) {
    const CurvatureTensor t = random_tensor(2, r, 1.0, 40 + r);
    Stream zr = Stream::keyed(41, {r});
    const auto zeta = unit_vector(2, zr);
    for (unsigned k : {2u, 5u, 10u}) {
      std::vector<double> v(N);
      for (std::size_t m = 0; m < N; ++m) {
        Stream rng = Stream::keyed(42 + k, {m});
        const JetSample s = draw_jet_sample(k, r, rng);
        const double d = g_k(t, s.x, s.u).quadratic(zeta) - g_k_mean_given_x(t, s.x).quadratic(zeta);
        v[m] = d * d;
      }
      const double closed = partial_variance(t, zeta, k);
      if (r == 1) {
        CHECK(closed == 0.0);
        CHECK(mean_estimate(v).value <= 1e-20);
      } else {
        CHECK(mean_estimate(v).within(closed, 3.0));
      }
    }
  }
}

TEST_CASE("sigma_variance") {
  CHECK(sigma_variance(CurvatureTensor::zero(2, 2), 10, 1).squared.value == 0.0);
  const auto s1 = sigma_variance(trace_free(random_tensor(3, 1, 1.0, 2)), 100, 1);
  CHECK(s1.squared.value <= 1e-28);
  CHECK(s1.trace_free);
  CHECK_FALSE(sigma_variance(fubini_study_tensor(2), 10, 1).trace_free);

  // full double Monte-Carlo against the hybrid estimator
  const CurvatureTensor t = trace_free(random_tensor(2, 3, 1.0, 12));
  const SigmaEstimate hybrid = sigma_variance(t, 40000, 13);
  std::vector<double> v(100000);
  for (std::size_t m = 0; m < v.size(); ++m) {
    Stream rng = Stream::keyed(14, {m});
    const auto zeta = sample_sphere(2, rng);
    const auto u = sample_sphere(3, rng);
    v[m] = std::pow(t.form(zeta, u), 2);
  }
  const Estimate full = mean_estimate(v);
  CHECK(std::abs(full.value - hybrid.squared.value) <=
        3.0 * std::hypot(full.std_error, hybrid.squared.std_error));
}

TEST_CASE("sup_norm") {
  CHECK(sup_norm(CurvatureTensor::unit(3, 2), 4, 1) == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t n = 1; n <= 3; ++n) {
    const CurvatureTensor fs = fubini_study_tensor(n);
    const double est = sup_norm(fs, 8, 2);
    CHECK(est == doctest::Approx(2.0).epsilon(1e-9));
    // dense random search oracle
    double best = 0.0;
    for (std::size_t m = 0; m < 100000; ++m) {
      Stream rng = Stream::keyed(3, {n, m});
      const auto zeta = sample_sphere(n, rng);
      const auto u = sample_sphere(n, rng);
      best = std::max(best, std::abs(fs.form(zeta, u)));
    }
    CHECK(best <= est + 1e-12);
    CHECK(best >= est - (n == 1 ? 1e-12 : 0.1));
  }
  const CurvatureTensor t = random_tensor(3, 2, 1.0, 6);
  double prev = 0.0;
  for (std::size_t restarts : {1u, 2u, 4u, 8u, 16u}) {
    const double v = sup_norm(t, restarts, 9);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("norm bound on g_k") {
  const CurvatureTensor t = random_tensor(3, 2, 1.0, 17);
  const double sup = sup_norm(t, 16, 3);
  for (std::size_t m = 0; m < 2000; ++m) {
    Stream rng = Stream::keyed(18, {m});
    const JetSample s = draw_jet_sample(6, 2, rng);
    CHECK(operator_norm(g_k(t, s.x, s.u)) <= s.x.harmonic_weight() * sup * (1 + 1e-9));
  }
}

TEST_CASE("jet draws are nested in k") {
  Stream a = Stream::keyed(7, {1});
  Stream b = Stream::keyed(7, {1});
  const JetSample small = draw_jet_sample(3, 2, a);
  const JetSample large = draw_jet_sample(6, 2, b);
  for (std::size_t s = 0; s < 3; ++s) CHECK(small.u.u[s] == large.u.u[s]);
}

TEST_CASE("tensor JSON round trip") {
  const CurvatureTensor t = random_tensor(2, 3, 1.0, 4);
  const CurvatureTensor back = tensor_from_json(tensor_to_json(t));
  CHECK(back.n() == 2);
  CHECK(back.r() == 3);
  for (std::size_t i = 0; i < t.coefficients().size(); ++i) CHECK(back.coefficients()[i] == t.coefficients()[i]);
  nlohmann::json bad = tensor_to_json(t);
  bad["c"][1] = {5.0, 0.0};
  CHECK_THROWS_AS(tensor_from_json(bad), ValidationError);
  CHECK_THROWS_AS(tensor_from_json(nlohmann::json{{"n", 2}}), ValidationError);
}

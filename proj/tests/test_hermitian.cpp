#include <cmath>

#include "doctest.h"
#include "random_forms.hpp"

#include "jetmorse/error.hpp"
#include "jetmorse/hermitian.hpp"
#include "jetmorse/measures.hpp"
#include "jetmorse/stats.hpp"

using namespace jetmorse;
using testing_support::random_hermitian;

TEST_CASE("construction rejects non-hermitian input") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, 1), 2.0;
  CHECK_THROWS_AS(HermitianForm{m}, ValidationError);
  m(1, 0) = Complex(0, -1);
  CHECK_NOTHROW(HermitianForm{m});
  Eigen::MatrixXcd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(HermitianForm{rect}, ValidationError);
}

TEST_CASE("eigenvalue examples") {
  CHECK(eigenvalues(HermitianForm::identity(3)) == std::vector<double>{1, 1, 1});
  const auto ev = eigenvalues(HermitianForm::diagonal({2, -1}));
  CHECK(ev[0] == doctest::Approx(-1));
  CHECK(ev[1] == doctest::Approx(2));
}

TEST_CASE("reconstruction and minimax perturbation") {
  Stream rng = Stream::keyed(5, {});
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 50; ++t) {
      const HermitianForm a = random_hermitian(n, rng);
      const HermitianForm b = random_hermitian(n, rng);
      const EigenDecomposition d = eigen_decompose(a);
      Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(d.values.data(), Eigen::Index(n));
      const Eigen::MatrixXcd rec = d.vectors * lam.cast<Complex>().asDiagonal() * d.vectors.adjoint();
      CHECK((a.matrix() - rec).norm() <= 1e-10 * std::max(1.0, operator_norm(a)));
      const auto ea = eigenvalues(a);
      const auto eb = eigenvalues(b);
      const double dist = operator_norm(a - b);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ea[i] - eb[i]) <= dist * (1 + 1e-12) + 1e-12);
      CHECK(operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-12);
      const Signature s = signature(a, 1e-9);
      CHECK(s.plus + s.minus + s.zero == n);
    }
  }
}

TEST_CASE("signature examples") {
  CHECK(signature(HermitianForm::identity(3), 1e-9) == Signature{3, 0, 0});
  CHECK(signature(HermitianForm::diagonal({1, -1}), 1e-9) == Signature{1, 1, 0});
  CHECK(signature(HermitianForm::diagonal({1, 1e-12}), 1e-9) == Signature{1, 0, 1});
}

TEST_CASE("signed_index_det examples") {
  CHECK(signed_index_det(HermitianForm::identity(2), 0, 1e-9) == doctest::Approx(1));
  CHECK(signed_index_det(HermitianForm::diagonal({1, -1}), 1, 1e-9) == doctest::Approx(-1));
  CHECK(signed_index_det(HermitianForm::diagonal({1, -1}), 0, 1e-9) == 0.0);
  CHECK(signed_index_det(HermitianForm::diagonal({1, 1e-12}), 0, 1e-9) == 0.0);
  CHECK(signed_index_det(HermitianForm::diagonal({1, -1}), 5) == 0.0);
  CHECK(signed_index_det(HermitianForm::diagonal({-2, -3}), 2) == doctest::Approx(6));
}

TEST_CASE("determinant difference bound") {
  CHECK(det_diff_bound_holds(HermitianForm::identity(3), HermitianForm::identity(3), 0));
  CHECK(det_diff_bound_holds(HermitianForm::diagonal({1}), HermitianForm::diagonal({-1}), 0));
  Stream rng = Stream::keyed(6, {});
  int failures = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (int t = 0; t < 500; ++t) {
      const HermitianForm a = random_hermitian(n, rng);
      const HermitianForm b = random_hermitian(n, rng, t % 2 ? 1.0 : 0.05) + a;
      for (std::size_t q = 0; q <= n; ++q)
        if (!det_diff_bound_holds(a, b, q)) ++failures;
    }
  CHECK(failures == 0);
}

TEST_CASE("sphere_second_moment examples") {
  for (std::size_t n = 1; n <= 6; ++n) CHECK(sphere_second_moment(HermitianForm::identity(n)) == doctest::Approx(1));
  CHECK(sphere_second_moment(HermitianForm::diagonal({1, -1})) == doctest::Approx(1.0 / 3.0));
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<double> d(n, 0.0);
    d[0] = 1.0;
    const HermitianForm a = HermitianForm::diagonal(d);
    const double closed = sphere_second_moment(a);
    CHECK(closed == doctest::Approx(2.0 / double(n * (n + 1))));
    std::vector<double> v(50000);
    for (std::size_t i = 0; i < v.size(); ++i) {
      Stream rng = Stream::keyed(7 + n, {i});
      v[i] = std::pow(a.quadratic(sample_sphere(n, rng)), 2);
    }
    CHECK(mean_estimate(v).within(closed, 3.0));
  }
}

TEST_CASE("norm sandwich and trace-free variance") {
  Stream rng = Stream::keyed(8, {});
  for (std::size_t n = 1; n <= 6; ++n)
    for (int t = 0; t < 100; ++t) {
      const HermitianForm a = random_hermitian(n, rng);
      const double m = sphere_second_moment(a), nn = operator_norm(a);
      CHECK(nn * nn / double(n * n) <= m * (1 + 1e-12));
      CHECK(m <= nn * nn * (1 + 1e-12));
      const HermitianForm tf = trace_free_part(a);
      CHECK(std::abs(tf.trace()) <= 1e-12 * std::max(1.0, operator_norm(a)));
      double s2 = 0.0;
      for (double l : eigenvalues(tf)) s2 += l * l;
      CHECK(sphere_second_moment(tf) == doctest::Approx(s2 / double(n * (n + 1))).epsilon(1e-12));
    }
}

TEST_CASE("trace_free_part and operator_norm examples") {
  CHECK(operator_norm(trace_free_part(HermitianForm::identity(2))) <= 1e-15);
  const auto tf = eigenvalues(trace_free_part(HermitianForm::diagonal({1, 0})));
  CHECK(tf[0] == doctest::Approx(-0.5));
  CHECK(tf[1] == doctest::Approx(0.5));
  CHECK(operator_norm(HermitianForm::diagonal({3, -5})) == doctest::Approx(5));
  CHECK(operator_norm(HermitianForm::identity(4)) == doctest::Approx(1));
}

TEST_CASE("quadratic form convention") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, -1), 1.0;
  const HermitianForm h(m);
  const std::vector<Complex> zeta{Complex(1, 0), Complex(0, 1)};
  double direct = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) direct += (m(i, j) * zeta[i] * std::conj(zeta[j])).real();
  CHECK(h.quadratic(zeta) == doctest::Approx(direct));
}

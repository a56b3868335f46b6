#include <cmath>
#include <sstream>

#include "doctest.h"

#include "jetmorse/error.hpp"
#include "jetmorse/jet_combinatorics.hpp"
#include "jetmorse/models.hpp"
#include "jetmorse/morse_mc.hpp"

using namespace jetmorse;

namespace {

ManifoldSample scalar_sample(double c) {
  std::vector<SamplePoint> pts{{0, CurvatureTensor(1, 1, {Complex(c, 0.0)}), 1.0, {}}};
  return ManifoldSample(pts);
}

MorseOptions opts(std::size_t samples, std::uint64_t seed, unsigned workers = 1) {
  MorseOptions o;
  o.samples = samples;
  o.seed = seed;
  o.workers = workers;
  return o;
}

}  // namespace

TEST_CASE("ManifoldSample validation") {
  std::vector<SamplePoint> mixed{{0, CurvatureTensor::unit(2, 2), 0.5, {}}, {1, CurvatureTensor::unit(2, 1), 0.5, {}}};
  CHECK_THROWS_AS(ManifoldSample{mixed}, ValidationError);
  std::vector<SamplePoint> dup{{0, CurvatureTensor::unit(2, 2), 0.5, {}}, {0, CurvatureTensor::unit(2, 2), 0.5, {}}};
  CHECK_THROWS_AS(ManifoldSample{dup}, ValidationError);
  std::vector<SamplePoint> neg{{0, CurvatureTensor::unit(2, 2), -1.0, {}}};
  CHECK_THROWS_AS(ManifoldSample{neg}, ValidationError);
  std::vector<SamplePoint> twist{{0, CurvatureTensor::unit(2, 2), 1.0, TwistForm{HermitianForm::identity(3)}}};
  CHECK_THROWS_AS(ManifoldSample{twist}, ValidationError);
}

TEST_CASE("eta_index_integral examples") {
  const ManifoldSample fs = fubini_study_sample(2, 4);
  CHECK(eta_index_integral(fs, 2) == doctest::Approx(9.0));
  CHECK(eta_index_integral(fs, 0) == 0.0);
  CHECK(eta_index_integral(fs, 1) == 0.0);
  std::vector<SamplePoint> pos{{0, CurvatureTensor::unit(2, 2) * 2.0, 0.25, {}},
                               {1, CurvatureTensor::unit(2, 2) * 3.0, 0.75, {}}};
  // eta = r * scale * Id with r = 2
  CHECK(eta_index_integral(ManifoldSample(pos), 0) == doctest::Approx(0.25 * 16.0 + 0.75 * 36.0));
  // the twist shifts eta before the index test
  std::vector<SamplePoint> tw{{0, fubini_study_tensor(2), 1.0, TwistForm{HermitianForm::diagonal({4.0, 1.0})}}};
  CHECK(eta_index_integral(ManifoldSample(tw), 1) == doctest::Approx(-2.0));
}

TEST_CASE("reduced_morse_integral scalar examples") {
  const ManifoldSample s = scalar_sample(2.5);
  const Estimate e1 = reduced_morse_integral(s, 1, 0, opts(100, 1));
  CHECK(e1.value == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(e1.std_error <= 1e-15);
  const Estimate e2 = reduced_morse_integral(s, 2, 0, opts(100000, 2));
  CHECK(e2.within(0.75 * 2.5, 3.0));
  CHECK(reduced_morse_integral(s, 2, 1, opts(100, 2)).value == 0.0);
  CHECK(reduced_morse_integral(s, 2, 5, opts(100, 2)).value == 0.0);
}

TEST_CASE("full_morse_constant and twist_delta") {
  CHECK(full_morse_constant(1, 1, 1).exact == 1);
  CHECK(full_morse_constant(2, 1, 1).exact == 1);
  for (unsigned k = 1; k <= 30; ++k) {
    const FullMorseConstant c = full_morse_constant(2, k, 2);
    CHECK(std::isfinite(c.log));
    Integer kf = 1;
    for (unsigned i = 2; i <= k; ++i) kf *= i;
    const Rational expect = Rational(factorial(2 + 2 * k - 1), factorial(2) * kf * kf * factorial(2 * k - 1));
    CHECK(c.exact == expect);
    CHECK(c.log == doctest::Approx(std::log(to_double(expect))).epsilon(1e-12));
  }
  CHECK(std::isfinite(full_morse_constant(5, 3000, 3).log));
  CHECK(twist_delta(1, 1) == 1);
  CHECK(twist_delta(2, 1) == Rational(3, 4));
  CHECK(twist_delta(4, 2) == Rational(25, 96));
}

TEST_CASE("index sets partition the nondegenerate draws") {
  const ManifoldSample m = random_manifold_sample(3, 2, 3, 1.0, 4);
  const ReducedIntegrals ri = reduced_morse_integrals(m, 4, opts(20000, 5));
  double sum = 0.0;
  for (const auto& e : ri.by_q) sum += e.value;
  CHECK(std::abs(sum - ri.nondegenerate_total.value) <= 3.0 * ri.nondegenerate_total.std_error + 1e-12);
}

TEST_CASE("results do not depend on the worker count") {
  const ManifoldSample m = random_manifold_sample(2, 2, 3, 1.0, 8);
  const ReducedIntegrals a = reduced_morse_integrals(m, 6, opts(3000, 9, 1));
  const ReducedIntegrals b = reduced_morse_integrals(m, 6, opts(3000, 9, 4));
  for (std::size_t q = 0; q < a.by_q.size(); ++q) {
    CHECK(a.by_q[q].value == b.by_q[q].value);
    CHECK(a.by_q[q].std_error == b.by_q[q].std_error);
  }
}

TEST_CASE("degenerate band shrinks with the tolerance") {
  const ManifoldSample m = random_manifold_sample(2, 2, 2, 1.0, 10);
  double prev = 2.0;
  for (double tol : {1e-1, 1e-2, 1e-3}) {
    MorseOptions o = opts(20000, 11);
    o.tol = tol;
    const double f = reduced_morse_integrals(m, 3, o).degenerate_fraction;
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("rank-one factorization") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const ManifoldSample m = random_manifold_sample(n, 1, 4, 1.0, 20 + n);
    for (unsigned k : {2u, 5u}) {
      const ReducedIntegrals ri = reduced_morse_integrals(m, k, opts(40000, 21));
      const double ik = to_double(ikrn_exact(k, 1, unsigned(n)));
      for (std::size_t q = 0; q <= n; ++q) {
        const double target = ik * eta_index_integral(m, q);
        CHECK(ri.by_q[q].within(target, 3.0));
      }
    }
  }
}

TEST_CASE("convergence study on Fubini-Study") {
  const ManifoldSample fs = fubini_study_sample(2, 2);
  const MorseReport rep = convergence_study(fs, {4, 8, 16}, {2, 5}, opts(20000, 3));
  REQUIRE(rep.rows.size() == 6);
  std::vector<double> dev;
  for (const auto& row : rep.rows) {
    if (row.q == 5) {
      CHECK(row.reduced_estimate == 0.0);
      CHECK(row.eta_integral == 0.0);
    } else {
      CHECK(row.eta_integral == doctest::Approx(9.0));
      dev.push_back(row.normalized_deviation);
    }
  }
  CHECK(dev[1] < dev[0]);
  CHECK(dev[2] < dev[1]);
  CHECK_THROWS_AS(convergence_study(fs, {8, 4}, {2}, opts(100, 3)), ValidationError);

  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("k,q,reduced_estimate,std_error,eta_integral,normalized_deviation,degenerate_fraction,"
                  "log_full_constant\n",
                  0) == 0);
  const nlohmann::json j = rep.to_json();
  CHECK(j["rows"].size() == 6);
  CHECK(j["rows"][0].contains("ikrn"));
}

TEST_CASE("trace-free tensors have no principal term") {
  std::vector<SamplePoint> pts;
  for (std::uint64_t i = 0; i < 3; ++i)
    pts.push_back({i, trace_free(random_tensor(2, 2, 1.0, 30 + i)), 1.0 / 3, {}});
  const ManifoldSample m(pts);
  const MorseReport rep = convergence_study(m, {2, 8, 32}, {0, 1, 2}, opts(20000, 4));
  // |det g_k| <= ((sum x_s/s) sup|T|)^n, so the rescaled estimate is at most
  // r^n sum_p w_p sup|T_p|^n
  double bound = 0.0;
  for (const auto& p : m.points()) bound += p.weight * std::pow(sup_norm(p.tensor, 16, 1), 2);
  bound *= 4.0;
  for (const auto& row : rep.rows) {
    CHECK(row.eta_integral == 0.0);
    CHECK(row.normalized_deviation <= bound * (1 + 1e-6));
  }
}

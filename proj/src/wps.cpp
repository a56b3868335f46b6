#include "jetmorse/wps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "jetmorse/error.hpp"
#include "jetmorse/parallel.hpp"

namespace jetmorse {

namespace {

double norm2(const ComplexVector& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

void check_point(const WeightSpec& w, const FiberPoint& z) {
  if (z.size() != w.k()) throw ValidationError("fiber point has wrong number of blocks");
  for (std::size_t s = 0; s < z.size(); ++s) {
    if (z[s].size() != w.mults()[s]) throw ValidationError("fiber block has wrong dimension");
  }
}

enum class Mode { finite_p, limit };

Estimate integrate(const WeightSpec& w, const InvariantFunction& f,
                   const FiberIntegrationOptions& opts, Mode mode) {
  if (opts.samples < 2) throw ValidationError("integrate_fiber: need at least 2 samples");
  const std::size_t k = w.k();
  std::vector<double> shapes(w.mults().begin(), w.mults().end());
  std::vector<double> values(opts.samples);

  parallel_for(opts.samples, opts.workers, [&](std::size_t i) {
    Stream rng = Stream::keyed(opts.seed, {i});
    FiberPoint z(k);
    if (mode == Mode::finite_p) {
      SimplexPoint x = sample_dirichlet(shapes, rng);
      for (std::size_t s = 0; s < k; ++s) {
        z[s] = sample_sphere(w.mults()[s], rng);
        const double radius = std::pow(x.x[s], double(w.weights()[s]) / (2.0 * w.p()));
        for (auto& c : z[s]) c *= radius;
      }
    } else {
      for (std::size_t s = 0; s < k; ++s) z[s] = sample_sphere(w.mults()[s], rng);
    }
    const double v = f(z);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrand returned " << v << " at sample " << i;
      throw NumericalError(msg.str());
    }
    values[i] = v;
  });

  Estimate e = mean_estimate(values);
  const double vol = to_double(volume_closed_form(w));
  return {e.value * vol, e.std_error * vol};
}

}  // namespace

WeightSpec::WeightSpec(std::vector<unsigned> weights, std::vector<unsigned> mults,
                       std::optional<double> p)
    : a_(std::move(weights)), r_(std::move(mults)) {
  if (a_.empty()) throw ValidationError("WeightSpec: need at least one weight");
  if (a_.size() != r_.size()) throw ValidationError("WeightSpec: weights and multiplicities differ in length");
  for (unsigned v : a_)
    if (v == 0) throw ValidationError("WeightSpec: weights must be positive");
  for (unsigned v : r_)
    if (v == 0) throw ValidationError("WeightSpec: multiplicities must be positive");
  unsigned g = 0;
  unsigned long long l = 1;
  for (unsigned v : a_) {
    g = std::gcd(g, v);
    l = std::lcm(l, (unsigned long long)v);
  }
  if (g != 1) throw ValidationError("WeightSpec: weights are not coprime (gcd " + std::to_string(g) + ")");
  p_ = p.value_or(double(l));
  const unsigned amax = *std::max_element(a_.begin(), a_.end());
  if (!(p_ >= double(amax)) || !std::isfinite(p_))
    throw ValidationError("WeightSpec: exponent p must satisfy p >= max(a)");
}

unsigned WeightSpec::total_rank() const { return std::accumulate(r_.begin(), r_.end(), 0u); }

double phi(const WeightSpec& w, const FiberPoint& z) {
  check_point(w, z);
  // log-sum-exp over s of (p/a_s) log|z_s|^2
  std::vector<double> terms;
  for (std::size_t s = 0; s < z.size(); ++s) {
    const double n2 = norm2(z[s]);
    if (n2 > 0.0) terms.push_back(w.p() / double(w.weights()[s]) * std::log(n2));
  }
  if (terms.empty()) throw DomainError("phi: fiber point is zero");
  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return (m + std::log(acc)) / w.p();
}

double phi_limit(const WeightSpec& w, const FiberPoint& z) {
  check_point(w, z);
  double best = -INFINITY;
  for (std::size_t s = 0; s < z.size(); ++s) {
    const double n2 = norm2(z[s]);
    if (n2 > 0.0) best = std::max(best, std::log(n2) / double(w.weights()[s]));
  }
  if (best == -INFINITY) throw DomainError("phi_limit: fiber point is zero");
  return best;
}

FiberPoint weighted_action(const WeightSpec& w, std::complex<double> lambda, const FiberPoint& z) {
  check_point(w, z);
  FiberPoint out = z;
  for (std::size_t s = 0; s < z.size(); ++s) {
    const auto factor = std::pow(lambda, int(w.weights()[s]));
    for (auto& c : out[s]) c *= factor;
  }
  return out;
}

Rational volume_closed_form(const WeightSpec& w) {
  Integer den = 1;
  for (std::size_t s = 0; s < w.k(); ++s) {
    Integer as = w.weights()[s];
    for (unsigned i = 0; i < w.mults()[s]; ++i) den *= as;
  }
  return Rational(Integer(1), den);
}

Estimate integrate_fiber(const WeightSpec& w, const InvariantFunction& f,
                         const FiberIntegrationOptions& opts) {
  return integrate(w, f, opts, Mode::finite_p);
}

Estimate integrate_fiber_limit(const WeightSpec& w, const InvariantFunction& f,
                               const FiberIntegrationOptions& opts) {
  return integrate(w, f, opts, Mode::limit);
}

}  // namespace jetmorse

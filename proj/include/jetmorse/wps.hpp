#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "jetmorse/exact.hpp"
#include "jetmorse/measures.hpp"
#include "jetmorse/stats.hpp"

namespace jetmorse {

/// Weighted projective space P(a_1^[r_1], ..., a_k^[r_k]) together with the
/// exponent p of its degenerate Kahler potential.
class WeightSpec {
 public:
  /// Throws ValidationError unless the lengths agree, every entry is
  /// positive, gcd(a) == 1 and p >= max(a). p defaults to lcm(a).
  WeightSpec(std::vector<unsigned> weights, std::vector<unsigned> mults,
             std::optional<double> p = std::nullopt);

  const std::vector<unsigned>& weights() const { return a_; }
  const std::vector<unsigned>& mults() const { return r_; }
  double p() const { return p_; }
  std::size_t k() const { return a_.size(); }
  /// |r| = sum of multiplicities.
  unsigned total_rank() const;

 private:
  std::vector<unsigned> a_;
  std::vector<unsigned> r_;
  double p_;
};

/// Fiber point z = (z_1, ..., z_k) with z_s in C^{r_s}.
using FiberPoint = std::vector<ComplexVector>;

/// A C*-invariant function of the fiber point.
using InvariantFunction = std::function<double(const FiberPoint&)>;

/// (1/p) log sum_s |z_s|^{2p/a_s}. DomainError if z is zero.
double phi(const WeightSpec& w, const FiberPoint& z);

/// log max_s |z_s|^{2/a_s}, the p -> infinity limit of phi.
double phi_limit(const WeightSpec& w, const FiberPoint& z);

/// Weighted action lambda . z = (lambda^{a_1} z_1, ..., lambda^{a_k} z_k).
FiberPoint weighted_action(const WeightSpec& w, std::complex<double> lambda, const FiberPoint& z);

/// Total volume 1 / prod a_s^{r_s} (independent of p).
Rational volume_closed_form(const WeightSpec& w);

struct FiberIntegrationOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Monte-Carlo integral of f against omega_{a,r,p}^{|r|-1}. Samples
/// x ~ Dirichlet(r), u_s uniform on the unit sphere of C^{r_s}, and
/// evaluates f(x_1^{a_1/2p} u_1, ..., x_k^{a_k/2p} u_k).
Estimate integrate_fiber(const WeightSpec& w, const InvariantFunction& f,
                         const FiberIntegrationOptions& opts);

/// The p -> infinity limit: (1/prod a_s^{r_s}) times the average of f over
/// the product of unit spheres.
Estimate integrate_fiber_limit(const WeightSpec& w, const InvariantFunction& f,
                               const FiberIntegrationOptions& opts);

}  // namespace jetmorse

#include "jetmorse/stats.hpp"

#include <stdexcept>

namespace jetmorse {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

Estimate mean_estimate(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("mean_estimate: empty sample");
  const double mean = pairwise_sum(xs) / double(n);
  if (n == 1) return {mean, 0.0};
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
  const double var = pairwise_sum(sq) / double(n - 1);
  return {mean, std::sqrt(var / double(n))};
}

double sample_covariance(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) throw std::invalid_argument("sample_covariance: bad sizes");
  const double mx = pairwise_sum(xs) / double(n);
  const double my = pairwise_sum(ys) / double(n);
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = (xs[i] - mx) * (ys[i] - my);
  return pairwise_sum(prod) / double(n - 1);
}

}  // namespace jetmorse

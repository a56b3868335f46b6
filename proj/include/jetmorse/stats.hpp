#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace jetmorse {

/// Monte-Carlo estimate of a mean with the standard error of that mean.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;

  /// |value - target| / std_error, or 0 when both the deviation and the
  /// error vanish.
  double z_score(double target) const {
    double d = value - target;
    if (std_error == 0.0) return d == 0.0 ? 0.0 : INFINITY;
    return d / std_error;
  }
  bool within(double target, double n_sigma) const {
    double d = std::abs(value - target);
    return d <= n_sigma * std_error + 1e-14 * std::max(1.0, std::abs(target));
  }
};

/// Pairwise summation over a fixed binary tree; the result depends only on
/// the order of `xs`.
double pairwise_sum(std::span<const double> xs);

/// Sample mean and standard error of the mean (n-1 normalization).
Estimate mean_estimate(std::span<const double> xs);

/// Sample covariance between two equally long sequences (n-1 normalization).
double sample_covariance(std::span<const double> xs, std::span<const double> ys);

}  // namespace jetmorse

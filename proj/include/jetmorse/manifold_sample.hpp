#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jetmorse/curvature.hpp"

namespace jetmorse {

/// One quadrature node of the base manifold.
struct SamplePoint {
  std::uint64_t id = 0;
  CurvatureTensor tensor;
  double weight = 0.0;
  std::optional<TwistForm> twist;
};

/// A fixed quadrature of the base manifold X: every integral over X is
/// replaced by sum_p weight_p f(p). All tensors share (n, r).
class ManifoldSample {
 public:
  ManifoldSample() = default;
  /// Validates shapes, positive weights, unique ids and twist dimensions.
  explicit ManifoldSample(std::vector<SamplePoint> points);

  const std::vector<SamplePoint>& points() const { return points_; }
  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  double total_weight() const;
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<SamplePoint> points_;
  std::size_t n_ = 0;
  std::size_t r_ = 0;
};

/// eta(T) plus the twist when present.
HermitianForm twisted_eta(const SamplePoint& p);

}  // namespace jetmorse

#include "jetmorse/manifold_sample.hpp"

#include <set>

#include "jetmorse/error.hpp"
#include "jetmorse/stats.hpp"

namespace jetmorse {

ManifoldSample::ManifoldSample(std::vector<SamplePoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("ManifoldSample: no points");
  n_ = points_.front().tensor.n();
  r_ = points_.front().tensor.r();
  std::set<std::uint64_t> ids;
  for (const auto& p : points_) {
    if (p.tensor.n() != n_ || p.tensor.r() != r_) throw ValidationError("ManifoldSample: tensors differ in (n, r)");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) throw ValidationError("ManifoldSample: weights must be positive");
    if (p.twist && p.twist->theta_F.dim() != n_) throw ValidationError("ManifoldSample: twist has wrong dimension");
    if (!ids.insert(p.id).second) throw ValidationError("ManifoldSample: duplicate point id " + std::to_string(p.id));
  }
}

double ManifoldSample::total_weight() const {
  std::vector<double> w;
  w.reserve(points_.size());
  for (const auto& p : points_) w.push_back(p.weight);
  return pairwise_sum(w);
}

HermitianForm twisted_eta(const SamplePoint& p) {
  HermitianForm e = eta(p.tensor);
  if (p.twist) e = e + p.twist->theta_F;
  return e;
}

}  // namespace jetmorse

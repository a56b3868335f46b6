#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

namespace jetmorse {

/// Counter-based random stream. A stream is identified by a key derived from
/// the user seed and a tuple of ids (point id, sample index, ...); the n-th
/// output is a fixed function of (key, n). Results therefore never depend on
/// which worker evaluates a sample or in which order.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key) : key_(key) {}

  /// Key for the sub-stream (seed, ids...).
  static Stream keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t k = mix(seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t id : ids) k = mix(k + 0x9e3779b97f4a7c15ULL * (id + 1));
    return Stream(k);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  std::uint64_t key() const { return key_; }

  // splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform double in [0,1).
inline double uniform01(Stream& rng) { return double(rng() >> 11) * 0x1.0p-53; }

inline double standard_normal(Stream& rng) {
  std::normal_distribution<double> dist;
  return dist(rng);
}

inline std::complex<double> complex_normal(Stream& rng) {
  std::normal_distribution<double> dist;
  double re = dist(rng);
  double im = dist(rng);
  return {re, im};
}

inline double gamma_draw(Stream& rng, double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

}  // namespace jetmorse

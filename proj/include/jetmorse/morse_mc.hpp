#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "jetmorse/exact.hpp"
#include "jetmorse/manifold_sample.hpp"
#include "jetmorse/stats.hpp"

namespace jetmorse {

struct MorseOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  /// Signature tolerance; negative selects 1e-9 * max(1, ||form||) per form.
  double tol = -1.0;
  unsigned workers = 1;
};

/// sum_p w_p 1_{eta,q} det(eta + Theta_F) over the quadrature.
double eta_index_integral(const ManifoldSample& m, std::size_t q, double tol = -1.0);

/// Inner Monte-Carlo integrals of 1_{g,q} det g for every q = 0..n, where
/// g = g_k(x,u) + (H_k/(kr)) Theta_F. The twist enters with the same
/// normalization as eta_k, so E[g] = (H_k/(kr)) (eta + Theta_F).
struct ReducedIntegrals {
  unsigned k = 0;
  std::vector<Estimate> by_q;     // size n+1
  Estimate nondegenerate_total;   // sum over q of the same draws
  double degenerate_fraction = 0.0;
};

ReducedIntegrals reduced_morse_integrals(const ManifoldSample& m, unsigned k, const MorseOptions& opts);

/// Single-q view of reduced_morse_integrals; zero for q > n.
Estimate reduced_morse_integral(const ManifoldSample& m, unsigned k, std::size_t q, const MorseOptions& opts);

/// (n+kr-1)! / (n! (k!)^r (kr-1)!), exact and as a natural log.
struct FullMorseConstant {
  Rational exact;
  double log = 0.0;
};
FullMorseConstant full_morse_constant(unsigned n, unsigned k, unsigned r);

/// H_k / (k r).
Rational twist_delta(unsigned k, unsigned r);

struct MorseRow {
  unsigned k = 0;
  std::size_t q = 0;
  double reduced_estimate = 0.0;
  double std_error = 0.0;
  double eta_integral = 0.0;
  /// |reduced_estimate * r^n / I_{k,r,n} - eta_integral|
  double normalized_deviation = 0.0;
  double degenerate_fraction = 0.0;
  double log_full_constant = 0.0;
  /// C / log k with C fitted on the first k >= 2 of the study.
  double predicted_decay = 0.0;
  Rational ikrn;
  /// Principal terms under the two normalizations of the leading
  /// coefficient: eta_integral * I / r^n and eta_integral * I.
  double principal_proof = 0.0;
  double principal_remark = 0.0;
};

struct MorseReport {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<MorseRow> rows;

  /// Header: k,q,reduced_estimate,std_error,eta_integral,normalized_deviation,
  /// degenerate_fraction,log_full_constant. 17 significant digits.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Runs reduced_morse_integrals for each k (ascending) with common random
/// numbers across k, and reports one row per (k, q) for q in `qs`.
MorseReport convergence_study(const ManifoldSample& m, const std::vector<unsigned>& k_list,
                              const std::vector<std::size_t>& qs, const MorseOptions& opts);

/// {"num": "...", "den": "..."}.
nlohmann::json rational_json(const Rational& q);

}  // namespace jetmorse

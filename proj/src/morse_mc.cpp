#include "jetmorse/morse_mc.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

#include "jetmorse/error.hpp"
#include "jetmorse/jet_combinatorics.hpp"
#include "jetmorse/parallel.hpp"

namespace jetmorse {

namespace {

constexpr int kNoIndex = -1;

double resolve_tol(double tol, std::span<const double> ev) {
  if (tol >= 0.0) return tol;
  double norm = 0.0;
  if (!ev.empty()) norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return 1e-9 * std::max(1.0, norm);
}

}  // namespace

double eta_index_integral(const ManifoldSample& m, std::size_t q, double tol) {
  if (q > m.n()) return 0.0;
  std::vector<double> terms;
  terms.reserve(m.size());
  for (const auto& p : m.points()) {
    const auto ev = eigenvalues(twisted_eta(p));
    terms.push_back(p.weight * indexed_determinant(ev, q, resolve_tol(tol, ev)).value);
  }
  return pairwise_sum(terms);
}

ReducedIntegrals reduced_morse_integrals(const ManifoldSample& m, unsigned k, const MorseOptions& opts) {
  if (k == 0) throw ValidationError("reduced_morse_integrals: k must be positive");
  if (opts.samples < 2) throw ValidationError("reduced_morse_integrals: need at least 2 samples");
  const std::size_t n = m.n();
  const std::size_t r = m.r();
  const double delta = to_double(twist_delta(k, unsigned(r)));

  ReducedIntegrals out;
  out.k = k;
  out.by_q.assign(n + 1, Estimate{});
  std::vector<double> var_by_q(n + 1, 0.0);
  std::vector<double> mean_by_q(n + 1, 0.0);
  double total_mean = 0.0, total_var = 0.0;
  std::size_t degenerate = 0;

  std::vector<int> index(opts.samples);
  std::vector<double> det(opts.samples);
  std::vector<double> column(opts.samples);
  for (const auto& p : m.points()) {
    const HermitianForm shift = p.twist ? p.twist->theta_F * delta : HermitianForm::zero(n);
    parallel_for(opts.samples, opts.workers, [&](std::size_t i) {
      Stream rng = Stream::keyed(opts.seed, {p.id, i});
      const JetSample draw = draw_jet_sample(k, r, rng);
      HermitianForm g = g_k(p.tensor, draw.x, draw.u);
      if (p.twist) g = g + shift;
      const auto ev = eigenvalues(g);
      const double tol = resolve_tol(opts.tol, ev);
      const Signature s = signature_of(ev, tol);
      if (s.zero > 0) {
        index[i] = kNoIndex;
        det[i] = 0.0;
        return;
      }
      double d = 1.0;
      for (double l : ev) d *= l;
      index[i] = int(s.minus);
      det[i] = d;
    });
    degenerate += std::size_t(std::count(index.begin(), index.end(), kNoIndex));
    const double w = p.weight;
    for (std::size_t q = 0; q <= n; ++q) {
      for (std::size_t i = 0; i < opts.samples; ++i) column[i] = index[i] == int(q) ? det[i] : 0.0;
      const Estimate e = mean_estimate(column);
      mean_by_q[q] += w * e.value;
      var_by_q[q] += w * w * e.std_error * e.std_error;
    }
    const Estimate all = mean_estimate(det);
    total_mean += w * all.value;
    total_var += w * w * all.std_error * all.std_error;
  }
  for (std::size_t q = 0; q <= n; ++q) out.by_q[q] = {mean_by_q[q], std::sqrt(var_by_q[q])};
  out.nondegenerate_total = {total_mean, std::sqrt(total_var)};
  out.degenerate_fraction = double(degenerate) / double(opts.samples * m.size());
  return out;
}

Estimate reduced_morse_integral(const ManifoldSample& m, unsigned k, std::size_t q, const MorseOptions& opts) {
  if (q > m.n()) return {0.0, 0.0};
  return reduced_morse_integrals(m, k, opts).by_q[q];
}

FullMorseConstant full_morse_constant(unsigned n, unsigned k, unsigned r) {
  if (k == 0 || r == 0) throw ValidationError("full_morse_constant: k and r must be positive");
  const unsigned kr = k * r;
  Integer kfact_pow = 1;
  for (unsigned i = 0; i < r; ++i) kfact_pow *= factorial(k);
  FullMorseConstant out;
  out.exact = Rational(factorial(n + kr - 1), factorial(n) * kfact_pow * factorial(kr - 1));
  out.log = log_of(out.exact);
  return out;
}

Rational twist_delta(unsigned k, unsigned r) {
  if (k == 0 || r == 0) throw ValidationError("twist_delta: k and r must be positive");
  return harmonic(k) / Rational(Integer(k) * r);
}

MorseReport convergence_study(const ManifoldSample& m, const std::vector<unsigned>& k_list,
                              const std::vector<std::size_t>& qs, const MorseOptions& opts) {
  if (!std::is_sorted(k_list.begin(), k_list.end())) throw ValidationError("convergence_study: k_list must be ascending");
  MorseReport report;
  report.n = m.n();
  report.r = m.r();
  const unsigned n = unsigned(m.n());
  const unsigned r = unsigned(m.r());
  const double r_pow_n = std::pow(double(r), double(n));

  std::vector<double> eta_q(qs.size());
  for (std::size_t j = 0; j < qs.size(); ++j) eta_q[j] = eta_index_integral(m, qs[j], opts.tol);

  // decay constant per q, fitted on the first k >= 2
  std::vector<double> decay_c(qs.size(), NAN);
  for (unsigned k : k_list) {
    const ReducedIntegrals ri = reduced_morse_integrals(m, k, opts);
    const Rational ikrn = ikrn_series(k, r, n);
    const double ikrn_d = to_double(ikrn);
    const double log_full = full_morse_constant(n, k, r).log;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      MorseRow row;
      row.k = k;
      row.q = qs[j];
      const Estimate e = qs[j] <= n ? ri.by_q[qs[j]] : Estimate{};
      row.reduced_estimate = e.value;
      row.std_error = e.std_error;
      row.eta_integral = eta_q[j];
      row.normalized_deviation = std::abs(e.value * r_pow_n / ikrn_d - eta_q[j]);
      row.degenerate_fraction = ri.degenerate_fraction;
      row.log_full_constant = log_full;
      row.ikrn = ikrn;
      row.principal_proof = eta_q[j] * ikrn_d / r_pow_n;
      row.principal_remark = eta_q[j] * ikrn_d;
      if (std::isnan(decay_c[j]) && k >= 2) decay_c[j] = row.normalized_deviation * std::log(double(k));
      row.predicted_decay = k >= 2 ? decay_c[j] / std::log(double(k)) : NAN;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string MorseReport::to_csv() const {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17);
  out << "k,q,reduced_estimate,std_error,eta_integral,normalized_deviation,degenerate_fraction,log_full_constant\n";
  for (const auto& row : rows) {
    out << row.k << ',' << row.q << ',' << row.reduced_estimate << ',' << row.std_error << ',' << row.eta_integral
        << ',' << row.normalized_deviation << ',' << row.degenerate_fraction << ',' << row.log_full_constant << '\n';
  }
  return out.str();
}

nlohmann::json rational_json(const Rational& q) {
  return {{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

nlohmann::json MorseReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    const FullMorseConstant full = full_morse_constant(unsigned(n), row.k, unsigned(r));
    nlohmann::json jr = {
        {"k", row.k},
        {"q", row.q},
        {"reduced_estimate", row.reduced_estimate},
        {"std_error", row.std_error},
        {"eta_integral", row.eta_integral},
        {"normalized_deviation", row.normalized_deviation},
        {"degenerate_fraction", row.degenerate_fraction},
        {"log_full_constant", row.log_full_constant},
        {"full_constant", rational_json(full.exact)},
        {"ikrn", rational_json(row.ikrn)},
        {"principal_proof_normalization", row.principal_proof},
        {"principal_remark_normalization", row.principal_remark},
    };
    jr["predicted_decay"] = std::isnan(row.predicted_decay) ? nlohmann::json(nullptr) : nlohmann::json(row.predicted_decay);
    rows_json.push_back(std::move(jr));
  }
  return {{"n", n}, {"r", r}, {"rows", std::move(rows_json)}};
}

}  // namespace jetmorse

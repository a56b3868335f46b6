#include "jetmorse/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>

#include "CLI11.hpp"

#include "jetmorse/error.hpp"
#include "jetmorse/jet_combinatorics.hpp"
#include "jetmorse/measures.hpp"
#include "jetmorse/model_spec.hpp"
#include "jetmorse/models.hpp"
#include "jetmorse/morse_mc.hpp"
#include "jetmorse/parallel.hpp"
#include "jetmorse/wps.hpp"

namespace jetmorse {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  unsigned threads = 0;

  unsigned workers() const { return threads ? threads : default_workers(); }
};

std::ostringstream fixed_stream() {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(17);
  return s;
}

std::string read_model_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw ValidationError("cannot read model file '" + arg + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << content;
}

// --- wps-volume ---------------------------------------------------------

struct WpsArgs {
  std::vector<unsigned> weights;
  std::vector<unsigned> mults;
  double p = 0.0;
};

void run_wps_volume(const WpsArgs& a, const Common& c, std::ostream& out) {
  std::optional<double> p;
  if (a.p > 0.0) p = a.p;
  const WeightSpec w(a.weights, a.mults, p);
  const Rational closed = volume_closed_form(w);
  const Estimate e = integrate_fiber(w, [](const FiberPoint&) { return 1.0; },
                                     {c.samples, c.seed, c.workers()});
  auto s = fixed_stream();
  s << "p = " << w.p() << '\n';
  s << "closed_form = " << to_string(closed) << '\n';
  s << "closed_form_value = " << to_double(closed) << '\n';
  s << "mc_estimate = " << e.value << '\n';
  s << "std_error = " << e.std_error << '\n';
  s << "z_score = " << e.z_score(to_double(closed)) << '\n';
  out << s.str();
}

// --- ikrn ------------------------------------------------------------------

struct IkrnArgs {
  unsigned k = 1, r = 1, n = 1;
  std::string mode = "exact";
  std::uint64_t ceiling = kDefaultCompositionCeiling;
  bool seed_given = false;
};

void run_ikrn(const IkrnArgs& a, const Common& c, std::ostream& out) {
  auto s = fixed_stream();
  if (a.mode == "exact") {
    const Rational v = ikrn_exact(a.k, a.r, a.n, a.ceiling);
    s << "exact = " << to_string(v) << '\n';
    s << "value = " << to_double(v) << '\n';
  } else if (a.mode == "bounds") {
    const IkrnBounds b = ikrn_bounds(a.k, a.r, a.n);
    s << "lower = " << to_string(b.lower) << '\n';
    s << "upper = " << to_string(b.upper) << '\n';
    s << "lower_value = " << to_double(b.lower) << '\n';
    s << "upper_value = " << to_double(b.upper) << '\n';
  } else if (a.mode == "asymptotic") {
    s << "asymptotic = " << ikrn_asymptotic(a.k, a.n) << '\n';
  } else if (a.mode == "mc") {
    if (!a.seed_given) throw ValidationError("--mode mc requires --seed");
    if (c.samples < 2) throw ValidationError("--samples must be at least 2");
    std::vector<double> values(c.samples);
    parallel_for(c.samples, c.workers(), [&](std::size_t i) {
      Stream rng = Stream::keyed(c.seed, {i});
      values[i] = std::pow(sample_nu(a.k, a.r, rng).harmonic_weight(), double(a.n));
    });
    const Estimate e = mean_estimate(values);
    s << "mc_estimate = " << e.value << '\n';
    s << "std_error = " << e.std_error << '\n';
  } else {
    throw ValidationError("unknown --mode '" + a.mode + "'");
  }
  out << s.str();
}

// --- morse -----------------------------------------------------------------

struct MorseArgs {
  std::string model;
  std::vector<unsigned> ks;
  std::vector<std::size_t> qs;
  double tol = -1.0;
  std::string out_prefix;
  std::string format = "csv";
};

void run_morse(const MorseArgs& a, const Common& c, std::ostream& out) {
  if (c.samples < 2) throw ValidationError("--samples must be at least 2");
  const ManifoldSample m = manifold_from_model(parse_json_text(read_model_text(a.model)));
  std::vector<std::size_t> qs = a.qs;
  if (qs.empty())
    for (std::size_t q = 0; q <= m.n(); ++q) qs.push_back(q);
  MorseOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.tol = a.tol;
  opts.workers = c.workers();
  const MorseReport report = convergence_study(m, a.ks, qs, opts);
  const std::string csv = report.to_csv();
  const std::string json = report.to_json().dump(2) + "\n";
  if (!a.out_prefix.empty()) {
    write_file(a.out_prefix + ".csv", csv);
    write_file(a.out_prefix + ".json", json);
    out << "wrote " << a.out_prefix << ".csv and " << a.out_prefix << ".json\n";
  } else {
    out << (a.format == "json" ? json : csv);
  }
}

// --- ci-threshold ------------------------------------------------------------

struct CiArgs {
  CompleteIntersectionSpec spec;
  unsigned k = 1000;
};

void run_ci_threshold(const CiArgs& a, std::ostream& out) {
  const double ln_k = ci_threshold(a.spec);
  const unsigned n = a.spec.n;
  const unsigned r = n;  // V = T_X
  auto s = fixed_stream();
  s << "ln_k_min = " << ln_k << '\n';
  s << "log10_k_min = " << ln_k / std::log(10.0) << '\n';
  s << "large_degree_limit_ln_k_min = " << ci_threshold_limit(n) << '\n';
  s << "k = " << a.k << '\n';
  if (a.k >= 2 && n >= 1) {
    const EpsilonRatio eps = epsilon_ratio(a.k, r, n);
    s << "epsilon_exact = " << eps.exact_decimal << '\n';
    s << "epsilon_harmonic_bound = " << eps.harmonic_bound << '\n';
    s << "epsilon_log_bound = " << eps.paper_bound << '\n';
    s << "epsilon_log_bound_applies = " << (a.k >= std::exp(5.0 * n - 5.0) ? "yes" : "no") << '\n';
  }
  // with ||eta|| <= 1, ||Theta|| <= 1 and ||trace-free Theta|| <= 2 in the rescaled metric
  double inner = 0.0;
  for (unsigned i = 1; i < n; ++i) inner += std::pow(double(r), double(i));
  const double j_per_volume = double(n) * std::sqrt(double(r)) * std::sqrt(inverse_square_sum(a.k)) * 2.0 * inner;
  s << "j_bound_per_volume = " << j_per_volume << '\n';
  out << s.str();
}

template <typename T>
void add_list(CLI::App* cmd, const char* name, std::vector<T>& target, const char* help, bool required) {
  auto* opt = cmd->add_option(name, target, help)->delimiter(',');
  if (required) opt->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"jetmorse: weighted projective integration, jet curvature Monte-Carlo and exact error bounds"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* cmd, bool stochastic) {
    cmd->add_option("--threads", common.threads, "worker threads (default: JETMORSE_THREADS or hardware)");
    if (stochastic) {
      cmd->add_option("--samples", common.samples, "Monte-Carlo samples (>= 2)")->check(CLI::Range(2ull, ~0ull));
    }
  };

  std::function<void()> action;

  WpsArgs wps;
  auto* wps_cmd = app.add_subcommand(
      "wps-volume",
      "Volume of P(a_1^[r_1],...,a_k^[r_k]): exact 1/prod a_s^r_s versus Monte-Carlo fiber integration "
      "(Dirichlet(r) on the simplex times uniform unit spheres)");
  add_list(wps_cmd, "--weights", wps.weights, "weights a_s, comma separated", true);
  add_list(wps_cmd, "--mults", wps.mults, "multiplicities r_s, comma separated", true);
  wps_cmd->add_option("--p", wps.p, "potential exponent p >= max(a) (default lcm(a))");
  wps_cmd->add_option("--seed", common.seed, "random seed")->required();
  add_common(wps_cmd, true);
  wps_cmd->callback([&] { action = [&] { run_wps_volume(wps, common, out); }; });

  IkrnArgs ikrn;
  auto* ikrn_cmd = app.add_subcommand(
      "ikrn",
      "I_{k,r,n} = int (sum_s x_s/s)^n dnu_{k,r}: exact rational, harmonic-number bracket "
      "r^n H_k^n/(kr)_n * [1, 1 + (1/3) sum_m 2^m n!/(n-m)! H_k^-m], (log k + gamma)^n/k^n, or Monte-Carlo");
  ikrn_cmd->add_option("--k", ikrn.k, "jet order k")->required()->check(CLI::PositiveNumber);
  ikrn_cmd->add_option("--r", ikrn.r, "rank r")->required()->check(CLI::PositiveNumber);
  ikrn_cmd->add_option("--n", ikrn.n, "power n")->required();
  ikrn_cmd->add_option("--mode", ikrn.mode, "exact | bounds | asymptotic | mc")
      ->check(CLI::IsMember({"exact", "bounds", "asymptotic", "mc"}));
  ikrn_cmd->add_option("--ceiling", ikrn.ceiling, "maximum number of weak compositions for exact mode");
  auto* ikrn_seed = ikrn_cmd->add_option("--seed", common.seed, "random seed (mc mode)");
  add_common(ikrn_cmd, true);
  ikrn_cmd->callback([&] {
    ikrn.seed_given = ikrn_seed->count() > 0;
    action = [&] { run_ikrn(ikrn, common, out); };
  });

  MorseArgs morse;
  auto* morse_cmd = app.add_subcommand(
      "morse",
      "q-index Morse integrals sum_z w int 1_{g_k,q} det g_k dnu dmu with "
      "g_k = sum_s (x_s/s) c(u_s,u_s), compared with int 1_{eta,q} det eta after rescaling by r^n/I_{k,r,n}");
  morse_cmd->add_option("--model", morse.model, "model JSON file or inline JSON object")->required();
  add_list(morse_cmd, "--k", morse.ks, "ascending jet orders, comma separated", true);
  add_list(morse_cmd, "--q", morse.qs, "indices q (default 0..n)", false);
  morse_cmd->add_option("--seed", common.seed, "random seed")->required();
  morse_cmd->add_option("--tol", morse.tol, "signature tolerance (default 1e-9 max(1,||g||))");
  morse_cmd->add_option("--out", morse.out_prefix, "write <prefix>.csv and <prefix>.json");
  morse_cmd->add_option("--format", morse.format, "stdout format without --out: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(morse_cmd, true);
  morse_cmd->callback([&] { action = [&] { run_morse(morse, common, out); }; });

  CiArgs ci;
  auto* ci_cmd = app.add_subcommand(
      "ci-threshold",
      "Sufficient jet order for complete intersections: ln k_min = 7.38 n^(n+1/2) "
      "((sum d+1)/(sum d-n-s-a-1))^n, with the epsilon and J error diagnostics at --k");
  ci_cmd->add_option("--n", ci.spec.n, "dimension of X")->required()->check(CLI::PositiveNumber);
  ci_cmd->add_option("--s", ci.spec.s, "codimension")->required()->check(CLI::PositiveNumber);
  add_list(ci_cmd, "--degrees", ci.spec.degrees, "degrees d_1..d_s, comma separated", true);
  ci_cmd->add_option("--a", ci.spec.a, "twist parameter a >= 0");
  ci_cmd->add_option("--k", ci.k, "jet order for the error diagnostics");
  add_common(ci_cmd, false);
  ci_cmd->callback([&] { action = [&] { run_ci_threshold(ci, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    action();
    return kExitOk;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << " (compositions: " << e.terms() << ")\n";
    return kExitResource;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace jetmorse

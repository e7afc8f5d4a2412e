#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpcr/errors.hpp"
#include "bpcr/hyperparams.hpp"
#include "bpcr/io.hpp"
#include "bpcr/oracle.hpp"
#include "bpcr/regression.hpp"
#include "bpcr/synthgen.hpp"

namespace bpcr::cli {

namespace {

namespace fs = std::filesystem;

const std::map<std::string, NoiseModelKind> kModels{{"gauss", NoiseModelKind::Gaussian},
                                                   {"cauchy", NoiseModelKind::Cauchy}};
const std::map<std::string, Estimator> kEstimators{{"moments", Estimator::Moments}, {"quantile", Estimator::Quantile}};
const std::map<std::string, CurveMode> kCurves{{"map-k", CurveMode::MapK}, {"mixture", CurveMode::Mixture}};

// Raw flag values shared by fit and scan.
struct FitFlags {
  std::string input;
  NoiseModelKind noise = NoiseModelKind::Gaussian;
  std::optional<NoiseModelKind> prior;
  std::optional<long long> k_max;
  std::optional<Estimator> estimator;
  std::optional<double> sigma;
  std::optional<double> nu;
  std::optional<double> rho;
  bool rho_subtract = false;
  CurveMode curve = CurveMode::MapK;
};

void add_fit_flags(CLI::App& cmd, FitFlags& f, bool with_curve) {
  cmd.add_option("--input", f.input, "single-column CSV of observations")->required();
  cmd.add_option("--noise", f.noise, "noise model")->transform(CLI::CheckedTransformer(kModels, CLI::ignore_case));
  cmd.add_option("--prior", f.prior, "level prior (default: same as --noise)")
      ->transform(CLI::CheckedTransformer(kModels, CLI::ignore_case));
  cmd.add_option("--kmax", f.k_max, "largest segment count considered (default n)");
  cmd.add_option("--estimator", f.estimator, "hyper-parameter estimator (default: moments for gauss noise, quantile otherwise)")
      ->transform(CLI::CheckedTransformer(kEstimators, CLI::ignore_case));
  cmd.add_option("--sigma", f.sigma, "in-segment noise scale override");
  cmd.add_option("--nu", f.nu, "level-prior location override");
  cmd.add_option("--rho", f.rho, "level-prior scale override");
  cmd.add_flag("--rho-subtract", f.rho_subtract, "reduce the estimated rho^2 by sigma^2");
  if (with_curve) {
    cmd.add_option("--curve", f.curve, "regression curve conditioned on k_hat or averaged over k")
        ->transform(CLI::CheckedTransformer(kCurves, CLI::ignore_case));
  }
}

FitOptions to_options(const FitFlags& f, std::size_t n, std::ostream& err) {
  FitOptions o;
  o.noise = f.noise;
  o.prior = f.prior.value_or(f.noise);
  o.estimator = f.estimator;
  o.nu = f.nu;
  o.rho = f.rho;
  o.sigma = f.sigma;
  o.rho_subtract = f.rho_subtract;
  o.curve = f.curve;
  if (f.k_max) {
    if (*f.k_max < 1) throw InputError("--kmax must be at least 1");
    if (static_cast<std::size_t>(*f.k_max) > n) {
      err << "note: --kmax " << *f.k_max << " exceeds n=" << n << "; using " << n << '\n';
      o.k_max = n;
    } else {
      o.k_max = static_cast<std::size_t>(*f.k_max);
    }
  }
  if (n >= 1 && n < 2 && !(f.rho && f.sigma)) {
    err << "note: too few points to estimate scales; using rho = sigma = 1 unless overridden\n";
  }
  return o;
}

int cmd_fit(const FitFlags& flags, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const DataSeries y = io::read_series(fs::path(flags.input));
  const FitOptions options = to_options(flags, y.size(), err);
  const FitReport report = fit(y, options);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  const std::string doc = io::canonical_dump(io::result_to_json(report, options));
  io::write_file(dir / "result.json", [&](std::ostream& os) { os << doc; });
  io::write_file(dir / "curve.csv", [&](std::ostream& os) { io::write_curve_csv(os, y, report.result); });
  io::write_file(dir / "breaks.csv", [&](std::ostream& os) { io::write_breaks_csv(os, report.result); });

  out << "n=" << y.size() << " k_hat=" << report.result.k_hat << " log_evidence=" << io::format_double(report.result.log_evidence)
      << '\n';
  return kOk;
}

int cmd_synth(const std::string& profile_name, std::optional<std::uint64_t> seed, std::size_t n, const std::string& path,
              std::ostream& out) {
  const auto profile = synth::parse_profile(profile_name);
  if (!profile) throw InputError("unknown profile '" + profile_name + "'");
  const synth::Sample sample = synth::generate(*profile, seed.value_or(synth::default_seed(*profile)), n);
  io::write_file(path, [&](std::ostream& os) { io::write_series(os, sample.data.values()); });
  out << "wrote " << sample.data.size() << " rows to " << path << '\n';
  return kOk;
}

int cmd_scan(const FitFlags& flags, double sigma_min, double sigma_max, std::size_t steps, const std::string& path,
             std::ostream& out, std::ostream& err) {
  if (!(sigma_min > 0.0) || !(sigma_min < sigma_max)) throw InputError("need 0 < --sigma-min < --sigma-max");
  if (steps < 2) throw InputError("--steps must be at least 2");

  const DataSeries y = io::read_series(fs::path(flags.input));
  const FitOptions options = to_options(flags, y.size(), err);
  const Hyperparameters hp = resolve_hyperparameters(y, options);
  const std::size_t k_max = options.k_max.value_or(y.size());

  std::vector<double> grid(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    grid[s] = sigma_min + (sigma_max - sigma_min) * static_cast<double>(s) / static_cast<double>(steps - 1);
  }
  // The estimate itself becomes a (marked) row when it falls inside the range.
  std::size_t marked = std::numeric_limits<std::size_t>::max();
  if (hp.sigma >= sigma_min && hp.sigma <= sigma_max) {
    const auto pos = std::lower_bound(grid.begin(), grid.end(), hp.sigma);
    marked = static_cast<std::size_t>(pos - grid.begin());
    if (pos == grid.end() || *pos != hp.sigma) grid.insert(pos, hp.sigma);
  }

  const std::vector<ScanPoint> points = evidence_scan(y, hp, options.noise, options.prior, grid, k_max);
  io::write_file(path, [&](std::ostream& os) { io::write_scan_csv(os, points, marked); });

  const auto best = std::max_element(points.begin(), points.end(),
                                     [](const ScanPoint& a, const ScanPoint& b) { return a.log_evidence < b.log_evidence; });
  out << "sigma_hat=" << io::format_double(hp.sigma) << " argmax_sigma=" << io::format_double(best->sigma)
      << " rows=" << points.size() << '\n';
  return kOk;
}

int cmd_check(std::size_t n_max, std::size_t trials, std::uint64_t seed, double tolerance, std::ostream& out) {
  const oracle::CheckReport report = oracle::run_check(n_max, trials, seed);
  const oracle::Deviation& d = report.worst;
  out << "instances: " << report.instances << '\n'
      << "log_evidence: " << io::format_double(d.log_evidence) << '\n'
      << "ck: " << io::format_double(d.ck) << '\n'
      << "boundary: " << io::format_double(d.boundary) << '\n'
      << "t_hat: " << io::format_double(d.t_hat) << '\n'
      << "seg_mean: " << io::format_double(d.seg_mean) << '\n'
      << "curve_mean: " << io::format_double(d.curve_mean) << '\n'
      << "max relative deviation: " << io::format_double(d.max()) << " (tolerance " << io::format_double(tolerance)
      << ")\n";
  const bool ok = d.max() <= tolerance;
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Bayesian piecewise-constant regression"};
  app.require_subcommand(1);

  FitFlags fit_flags;
  std::string fit_out;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a series and write result.json, curve.csv, breaks.csv");
  add_fit_flags(*fit_cmd, fit_flags, true);
  fit_cmd->add_option("--out", fit_out, "output directory")->required();

  std::string profile;
  std::optional<std::uint64_t> synth_seed;
  std::size_t synth_n = 100;
  std::string synth_out;
  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a three-segment benchmark series");
  synth_cmd->add_option("--profile", profile, "gl, gm, gh, cl, cm or ch")->required();
  synth_cmd->add_option("--seed", synth_seed, "random seed (default: the profile's shipped seed)");
  synth_cmd->add_option("--out", synth_out, "output CSV")->required();
  synth_cmd->add_option("--n", synth_n, "series length")->check(CLI::Range(std::size_t{4}, std::size_t{100000000}));

  FitFlags scan_flags;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::size_t steps = 0;
  std::string scan_out;
  CLI::App* scan_cmd = app.add_subcommand("scan", "log evidence and k_hat over a range of sigma");
  add_fit_flags(*scan_cmd, scan_flags, false);
  scan_cmd->add_option("--sigma-min", sigma_min)->required();
  scan_cmd->add_option("--sigma-max", sigma_max)->required();
  scan_cmd->add_option("--steps", steps)->required();
  scan_cmd->add_option("--out", scan_out, "output CSV")->required();

  std::size_t n_max = 10;
  std::size_t trials = 200;
  std::uint64_t check_seed = 1;
  double tolerance = 1e-9;
  CLI::App* check_cmd = app.add_subcommand("check", "compare the dynamic program against brute-force enumeration");
  check_cmd->add_option("--n-max", n_max)->check(CLI::Range(std::size_t{1}, oracle::kMaxLength));
  check_cmd->add_option("--trials", trials);
  check_cmd->add_option("--seed", check_seed);
  check_cmd->add_option("--tol", tolerance, "largest accepted relative deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_flags, fit_out, out, err);
    if (synth_cmd->parsed()) return cmd_synth(profile, synth_seed, synth_n, synth_out, out);
    if (scan_cmd->parsed()) return cmd_scan(scan_flags, sigma_min, sigma_max, steps, scan_out, out, err);
    if (check_cmd->parsed()) return cmd_check(n_max, trials, check_seed, tolerance, out);
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kInputError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
  return kInputError;
}

}  // namespace bpcr::cli

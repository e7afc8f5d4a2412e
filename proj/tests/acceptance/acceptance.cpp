// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.
// Pass criterion ids (e.g. `ac3 ac9`) to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bpcr/dp_engine.hpp"
#include "bpcr/hyperparams.hpp"
#include "bpcr/oracle.hpp"
#include "bpcr/regression.hpp"
#include "bpcr/segment_evidence.hpp"
#include "bpcr/synthgen.hpp"

namespace {

using namespace bpcr;
using Clock = std::chrono::steady_clock;

// Tolerances and thresholds.
constexpr double kOracleTol = 1e-9;
constexpr double kOracleSeconds = 10.0;
constexpr std::size_t kOracleInstances = 200;
constexpr double kQuadratureTol = 1e-3;
constexpr std::size_t kSeeds = 20;
constexpr double kGlRate = 0.90;
constexpr double kGmRate = 0.80;
constexpr double kGmBoundaryMass = 0.3;
constexpr double kScanArgmaxFraction = 0.2;
constexpr std::size_t kScanPoints = 50;
constexpr double kScanRate = 0.80;
constexpr double kCkTol = 1e-9;
constexpr double kRowTol = 1e-6;
constexpr double kCurveTol = 1e-10;
constexpr std::size_t kMonteCarloN = 10000;
constexpr std::size_t kMonteCarloReplicates = 10000;
constexpr double kMonteCarloTol = 0.05;
constexpr double kPerfSeconds = 5.0;
constexpr double kPerfRatio = 5.0;
constexpr double kCmRate = 0.70;
constexpr std::size_t kCmBoundarySlack = 2;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::uint64_t seed_for(synth::Profile p, std::size_t s) { return synth::default_seed(p) + 1000 * s; }

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

DataSeries random_steps(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> noise(0.0, 1.0), jump(0.0, 3.0);
  std::bernoulli_distribution breaks(0.3);
  std::vector<double> v(n);
  double level = jump(rng);
  for (double& x : v) {
    if (breaks(rng)) level += jump(rng);
    x = level + noise(rng);
  }
  return DataSeries(std::move(v));
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const oracle::CheckReport report = oracle::run_check(10, kOracleInstances, 2005);
  const double elapsed = seconds_since(start);
  const double dev = report.worst.max();
  return {dev <= kOracleTol && elapsed < kOracleSeconds && report.instances == kOracleInstances,
          std::to_string(report.instances) + " instances, max rel dev " + fmt("%.2e", dev) + " (tol 1e-9), " +
              fmt("%.3f", elapsed) + " s (limit 10 s)"};
}

Outcome quadrature_cross_check() {
  std::mt19937_64 rng(1729);
  double worst_a0 = 0.0, worst_m1 = 0.0, worst_m2 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const DataSeries y = random_steps(rng, 20);
    const Hyperparameters hp = estimate_moments(y);
    const MomentTables exact = gaussian_moments(y, hp);
    const MomentTables grid = grid_moments(y, hp, LocationScaleModel::gaussian(), LocationScaleModel::gaussian(),
                                           GridSpec::from_hyperparameters(hp));
    for (std::size_t i = 0; i < 20; ++i) {
      for (std::size_t j = i + 1; j <= 20; ++j) {
        worst_a0 = std::max(worst_a0, std::abs(grid.log_a0(i, j) - exact.log_a0(i, j)));
        worst_m1 = std::max(worst_m1, rel(grid.mean(i, j), exact.mean(i, j)));
        worst_m2 = std::max(worst_m2, rel(grid.second_moment(i, j), exact.second_moment(i, j)));
      }
    }
  }
  return {worst_a0 <= kQuadratureTol && worst_m1 <= kQuadratureTol && worst_m2 <= kQuadratureTol,
          "20 series n=20: max |dlogA0| " + fmt("%.2e", worst_a0) + ", m1 rel " + fmt("%.2e", worst_m1) + ", m2 rel " +
              fmt("%.2e", worst_m2) + " (tol 1e-3)"};
}

Outcome gl_benchmark() {
  const std::vector<std::size_t> truth{0, 25, 50, 100};
  const double sigma = 0.1;
  const double bound[] = {3 * sigma / std::sqrt(25.0), 3 * sigma / std::sqrt(25.0), 3 * sigma / std::sqrt(50.0)};
  const double level[] = {-1.0, 1.0, 0.0};
  std::size_t ok = 0;
  for (std::size_t s = 0; s < kSeeds; ++s) {
    const synth::Sample sample = synth::generate(synth::Profile::GL, seed_for(synth::Profile::GL, s));
    const RegressionResult r = fit(sample.data, {}).result;
    bool good = r.k_hat == 3 && r.boundaries.t_hat == truth;
    for (std::size_t m = 0; good && m < 3; ++m) good = std::abs(r.segments[m].mean - level[m]) <= bound[m];
    ok += good ? 1 : 0;
  }
  const double rate = static_cast<double>(ok) / kSeeds;
  return {rate >= kGlRate, std::to_string(ok) + "/20 seeds with k_hat=3, t_hat=(25,50) and levels in bounds (need 90%)"};
}

Outcome gm_benchmark() {
  std::size_t ok = 0;
  double worst_b = 1.0;
  for (std::size_t s = 0; s < kSeeds; ++s) {
    const synth::Sample sample = synth::generate(synth::Profile::GM, seed_for(synth::Profile::GM, s));
    const RegressionResult r = fit(sample.data, {}).result;
    if (r.k_hat != 3) continue;
    ++ok;
    worst_b = std::min(worst_b, r.boundaries.at(2, 50));
  }
  const double rate = static_cast<double>(ok) / kSeeds;
  return {rate >= kGmRate && worst_b >= kGmBoundaryMass,
          std::to_string(ok) + "/20 seeds with k_hat=3 (need 80%), min B(t2=50) on those " + fmt("%.3f", worst_b) +
              " (need 0.3)"};
}

Outcome sigma_scan() {
  const synth::Sample gm = synth::generate(synth::Profile::GM, synth::default_seed(synth::Profile::GM));
  const Hyperparameters hp = estimate_moments(gm.data);
  std::vector<double> grid(kScanPoints);
  for (std::size_t s = 0; s < kScanPoints; ++s) grid[s] = hp.sigma * (0.2 + 2.8 * static_cast<double>(s) / (kScanPoints - 1));
  const auto scan = evidence_scan(gm.data, hp, NoiseModelKind::Gaussian, NoiseModelKind::Gaussian, grid, 100);
  const auto best = std::max_element(scan.begin(), scan.end(),
                                     [](const ScanPoint& a, const ScanPoint& b) { return a.log_evidence < b.log_evidence; });
  const double gap = std::abs(best->sigma - hp.sigma);

  const double sigma_true = 0.32;
  std::vector<double> band;
  for (int s = 0; s <= 10; ++s) band.push_back(sigma_true * (1.0 + s / 10.0));
  std::size_t stable = 0;
  for (std::size_t s = 0; s < kSeeds; ++s) {
    const synth::Sample sample = synth::generate(synth::Profile::GM, seed_for(synth::Profile::GM, s));
    const Hyperparameters h = estimate_moments(sample.data);
    const auto pts = evidence_scan(sample.data, h, NoiseModelKind::Gaussian, NoiseModelKind::Gaussian, band, 100);
    stable += std::all_of(pts.begin(), pts.end(), [](const ScanPoint& p) { return p.k_hat == 3; }) ? 1 : 0;
  }
  const double rate = static_cast<double>(stable) / kSeeds;
  return {gap <= kScanArgmaxFraction * hp.sigma && rate >= kScanRate,
          "sigma_hat " + fmt("%.4f", hp.sigma) + ", argmax " + fmt("%.4f", best->sigma) + " (|gap| " +
              fmt("%.4f", gap) + " <= " + fmt("%.4f", kScanArgmaxFraction * hp.sigma) + "); k_hat=3 on [0.32,0.64] for " +
              std::to_string(stable) + "/20 seeds (need 80%)"};
}

Outcome normalizations() {
  double ck_dev = 0.0, row_dev = 0.0, mass_dev = 0.0;
  std::size_t fits = 0;
  auto record = [&](const RegressionResult& r) {
    double sum = 0.0;
    for (double c : r.ck) sum += c;
    ck_dev = std::max(ck_dev, std::abs(sum - 1.0));
    for (std::size_t p = 0; p <= r.boundaries.k; ++p) {
      double row = 0.0;
      for (std::size_t h = 0; h <= r.boundaries.n; ++h) row += r.boundaries.at(p, h);
      row_dev = std::max(row_dev, std::abs(row - 1.0));
    }
    for (double m : r.curve.mass) mass_dev = std::max(mass_dev, std::abs(m - 1.0));
    ++fits;
  };
  std::mt19937_64 rng(77);
  for (std::size_t n : {1u, 2u, 3u, 5u, 10u, 40u, 100u, 250u}) {
    const DataSeries y = random_steps(rng, n);
    for (auto kind : {NoiseModelKind::Gaussian, NoiseModelKind::Cauchy}) {
      for (auto mode : {CurveMode::MapK, CurveMode::Mixture}) {
        FitOptions o;
        o.noise = o.prior = kind;
        o.curve = mode;
        record(fit(y, o).result);
      }
    }
  }
  for (auto p : {synth::Profile::GL, synth::Profile::GM, synth::Profile::GH, synth::Profile::CL, synth::Profile::CM,
                 synth::Profile::CH}) {
    const synth::Sample s = synth::generate(p, synth::default_seed(p));
    FitOptions o;
    o.noise = o.prior = s.truth.noise_kind;
    record(fit(s.data, o).result);
  }
  return {ck_dev <= kCkTol && row_dev <= kRowTol && mass_dev <= kRowTol,
          std::to_string(fits) + " fits: |sum C_k - 1| " + fmt("%.1e", ck_dev) + " (tol 1e-9), boundary rows " +
              fmt("%.1e", row_dev) + ", covering mass " + fmt("%.1e", mass_dev) + " (tol 1e-6)"};
}

Outcome incremental_curve() {
  std::mt19937_64 rng(60);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const DataSeries y = random_steps(rng, 60);
    const Hyperparameters hp = estimate_moments(y);
    const MomentTables mt = gaussian_moments(y, hp);
    const DpTables dp = build_dp(mt, 60);
    const std::size_t k = evidence_and_ck(dp).k_hat;
    const CurveMoments inc = regression_curve(mt, dp, k);
    const std::vector<double> log_f0 = segment_cover_weights(mt, dp, k);
    for (std::size_t t = 1; t <= 60; ++t) {
      double f1 = 0.0, f2 = 0.0;
      for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = t; j <= 60; ++j) {
          const double lw = log_f0[i * 61 + j];
          if (lw == kLogZero) continue;
          f1 += std::exp(lw) * mt.mean(i, j);
          f2 += std::exp(lw) * mt.second_moment(i, j);
        }
      }
      worst = std::max({worst, rel(inc.mean[t - 1], f1), rel(inc.second[t - 1], f2)});
    }
  }
  return {worst <= kCurveTol, "20 fits n=60: max rel diff " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome loglik_monte_carlo() {
  const std::vector<double> f = synth::profile_truth(synth::Profile::GM, 0, kMonteCarloN).function();
  const double sigma = 0.32;
  std::mt19937_64 rng(31337);
  std::string detail;
  bool pass = true;
  for (auto kind : {NoiseModelKind::Gaussian, NoiseModelKind::Cauchy}) {
    std::normal_distribution<double> gauss(0.0, sigma);
    std::cauchy_distribution<double> cauchy(0.0, sigma);
    std::vector<double> y(kMonteCarloN);
    double sum = 0.0, sum2 = 0.0;
    LogLikelihood expected{};
    for (std::size_t rep = 0; rep < kMonteCarloReplicates; ++rep) {
      for (std::size_t t = 0; t < kMonteCarloN; ++t) {
        y[t] = f[t] + (kind == NoiseModelKind::Gaussian ? gauss(rng) : cauchy(rng));
      }
      expected = loglik_diagnostics(DataSeries(y), f, sigma, kind);
      sum += expected.ll;
      sum2 += expected.ll * expected.ll;
    }
    const double r = static_cast<double>(kMonteCarloReplicates);
    const double mean = sum / r;
    const double var = (sum2 - r * mean * mean) / (r - 1);
    const double mean_err = rel(mean, expected.mean);
    const double var_err = rel(var, expected.std * expected.std);
    pass = pass && mean_err <= kMonteCarloTol && var_err <= kMonteCarloTol;
    detail += to_string(kind) + ": mean rel err " + fmt("%.2e", mean_err) + ", var " + fmt("%.1f", var) + " vs " +
              fmt("%.1f", expected.std * expected.std) + " (rel err " + fmt("%.3f", var_err) + "); ";
  }
  detail += "n=10^4, 10^4 replicates, tol 5%";
  return {pass, detail};
}

Outcome performance() {
  auto best_time = [](std::size_t n) {
    const synth::Sample s = synth::generate(synth::Profile::GM, 769, n);
    FitOptions o;
    o.k_max = 100;
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = Clock::now();
      const FitReport report = fit(s.data, o);
      best = std::min(best, seconds_since(start));
      if (report.result.ck.size() != 100) return -1.0;
    }
    return best;
  };
  const double t1 = best_time(769);
  const double t2 = best_time(1538);
  const double ratio = t2 / t1;
  return {t1 >= 0 && t1 <= kPerfSeconds && ratio <= kPerfRatio,
          "n=769 k_max=100: " + fmt("%.3f", t1) + " s (limit 5 s); n=1538: " + fmt("%.3f", t2) + " s, ratio " +
              fmt("%.2f", ratio) + " (limit 5)"};
}

Outcome cauchy_robustness() {
  std::size_t ok = 0;
  std::size_t misplaced = 0;
  for (std::size_t s = 0; s < kSeeds; ++s) {
    const synth::Sample sample = synth::generate(synth::Profile::CM, seed_for(synth::Profile::CM, s));
    FitOptions o;
    o.noise = o.prior = NoiseModelKind::Cauchy;
    const RegressionResult r = fit(sample.data, o).result;
    if (r.k_hat != 3) continue;
    ++ok;
    for (std::size_t p = 1; p <= 2; ++p) {
      const std::size_t est = r.boundaries.t_hat[p];
      const std::size_t tru = sample.truth.boundaries[p];
      if ((est > tru ? est - tru : tru - est) > kCmBoundarySlack) ++misplaced;
    }
  }
  const double rate = static_cast<double>(ok) / kSeeds;
  return {rate >= kCmRate && misplaced == 0,
          std::to_string(ok) + "/20 seeds with k_hat=3 (need 70%), " + std::to_string(misplaced) +
              " inner boundaries off by more than 2 on those"};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"ac1", "oracle equivalence", oracle_equivalence},
      {"ac2", "quadrature cross-check", quadrature_cross_check},
      {"ac3", "GL benchmark", gl_benchmark},
      {"ac4", "GM benchmark", gm_benchmark},
      {"ac5", "sigma scan", sigma_scan},
      {"ac6", "normalizations", normalizations},
      {"ac7", "incremental vs direct curve", incremental_curve},
      {"ac8", "log-likelihood diagnostics", loglik_monte_carlo},
      {"ac9", "performance", performance},
      {"ac10", "Cauchy robustness", cauchy_robustness},
  };
  std::set<std::string> only(argv + 1, argv + argc);

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%-4s %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures;
}

#include "bpcr/regression.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bpcr/errors.hpp"

namespace bpcr {

RegressionResult regress(const DataSeries& y, const MomentTables& mt, double sigma, NoiseModelKind noise,
                         std::size_t k_max, CurveMode mode) {
  const DpTables dp = build_dp(mt, k_max);
  const SegmentCountPosterior post = evidence_and_ck(dp);

  RegressionResult r;
  r.log_evidence = post.log_evidence;
  r.ck = post.ck;
  r.k_hat = post.k_hat;
  r.boundaries = boundary_posterior(dp, r.k_hat);
  r.segments = segment_levels(mt, r.boundaries.t_hat);
  r.curve = mode == CurveMode::MapK ? regression_curve(mt, dp, r.k_hat) : mixture_curve(mt, dp, r.ck);
  r.curve_std = r.curve.std_dev();
  const std::vector<double> fitted = piecewise_fit(y.size(), r.segments);
  r.loglik = loglik_diagnostics(y, fitted, sigma, noise);
  return r;
}

void check_normalization(const RegressionResult& result) {
  const double ck_sum = std::accumulate(result.ck.begin(), result.ck.end(), 0.0);
  if (!(std::abs(ck_sum - 1.0) <= 1e-9)) {
    throw InvariantError("segment-count posterior sums to " + std::to_string(ck_sum));
  }
  const auto& b = result.boundaries;
  for (std::size_t p = 0; p <= b.k; ++p) {
    double row = 0.0;
    for (std::size_t h = 0; h <= b.n; ++h) row += b.at(p, h);
    if (!(std::abs(row - 1.0) <= 1e-6)) {
      throw InvariantError("boundary posterior row " + std::to_string(p) + " sums to " + std::to_string(row));
    }
  }
  for (std::size_t t = 0; t < result.curve.mass.size(); ++t) {
    if (!(std::abs(result.curve.mass[t] - 1.0) <= 1e-6)) {
      throw InvariantError("covering mass at t=" + std::to_string(t + 1) + " is " +
                           std::to_string(result.curve.mass[t]));
    }
  }
}

Estimator default_estimator(NoiseModelKind noise) noexcept {
  return noise == NoiseModelKind::Gaussian ? Estimator::Moments : Estimator::Quantile;
}

Estimator effective_estimator(const DataSeries& y, const FitOptions& options) noexcept {
  const Estimator estimator = options.estimator.value_or(default_estimator(options.noise));
  return estimator == Estimator::Quantile && y.size() < 4 ? Estimator::Moments : estimator;
}

Hyperparameters resolve_hyperparameters(const DataSeries& y, const FitOptions& options) {
  const Estimator estimator = effective_estimator(y, options);

  Hyperparameters hp;
  if (y.size() < 2) {
    hp = {y[0], 1.0, 1.0};
  } else if (estimator == Estimator::Moments) {
    hp = estimate_moments(y, options.rho_subtract);
  } else {
    hp = estimate_quantiles(y, QuartileConstants::for_models(options.noise, options.prior), options.rho_subtract);
  }
  if (options.nu) hp.nu = *options.nu;
  if (options.rho) hp.rho = *options.rho;
  if (options.sigma) hp.sigma = *options.sigma;
  hp.validate();
  return apply_floors(hp, y.range());
}

MomentTables build_moment_tables(const DataSeries& y, const Hyperparameters& hp, NoiseModelKind noise,
                                 NoiseModelKind prior) {
  if (noise == NoiseModelKind::Gaussian && prior == NoiseModelKind::Gaussian) return gaussian_moments(y, hp);
  return grid_moments(y, hp, LocationScaleModel::of(noise), LocationScaleModel::of(prior),
                      GridSpec::from_hyperparameters(hp));
}

FitReport fit(const DataSeries& y, const FitOptions& options) {
  const std::size_t n = y.size();
  const std::size_t k_max = options.k_max.value_or(n);
  if (k_max < 1 || k_max > n) {
    throw std::domain_error("k_max must lie in 1.." + std::to_string(n) + ", got " + std::to_string(k_max));
  }
  FitReport report;
  report.estimator = effective_estimator(y, options);
  report.k_max = k_max;
  report.hp = resolve_hyperparameters(y, options);
  const MomentTables mt = build_moment_tables(y, report.hp, options.noise, options.prior);
  report.result = regress(y, mt, report.hp.sigma, options.noise, k_max, options.curve);
  check_normalization(report.result);
  return report;
}

}  // namespace bpcr

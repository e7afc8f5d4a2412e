#include "bpcr/hyperparams.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bpcr/errors.hpp"

namespace bpcr {

QuartileConstants QuartileConstants::gaussian() { return {0.6744, 0.6744 * std::sqrt(2.0)}; }

QuartileConstants QuartileConstants::cauchy() { return {1.0, 2.0}; }

QuartileConstants QuartileConstants::for_models(NoiseModelKind noise, NoiseModelKind prior) {
  return {prior == NoiseModelKind::Gaussian ? gaussian().alpha : cauchy().alpha,
          noise == NoiseModelKind::Gaussian ? gaussian().beta : cauchy().beta};
}

Hyperparameters estimate_moments(const DataSeries& y, bool subtract_noise) {
  const std::size_t n = y.size();
  if (n < 2) throw InsufficientDataError("moment estimator needs at least 2 data points");
  const auto v = y.values();

  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);

  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  double rho2 = ss / static_cast<double>(n - 1);

  double dd = 0.0;
  for (std::size_t t = 0; t + 1 < n; ++t) dd += (v[t + 1] - v[t]) * (v[t + 1] - v[t]);
  const double sigma2 = dd / (2.0 * static_cast<double>(n - 1));

  if (subtract_noise) rho2 -= sigma2;
  Hyperparameters hp{mean, std::sqrt(std::max(0.0, rho2)), std::sqrt(sigma2)};
  return apply_floors(hp, y.range());
}

double sorted_quantile(std::span<const double> sorted, std::size_t num, std::size_t den) {
  const std::size_t m = sorted.size();
  if (m == 0 || den == 0) throw std::invalid_argument("sorted_quantile: empty input");
  std::size_t idx = (num * m + den - 1) / den;
  idx = std::clamp<std::size_t>(idx, 1, m);
  return sorted[idx - 1];
}

Hyperparameters estimate_quantiles(const DataSeries& y, const QuartileConstants& qc, bool subtract_noise) {
  const std::size_t n = y.size();
  if (n < 4) throw InsufficientDataError("quantile estimator needs at least 4 data points");
  if (!(qc.alpha > 0.0) || !(qc.beta > 0.0)) throw std::domain_error("quartile constants must be positive");

  std::vector<double> sorted(y.values().begin(), y.values().end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> diffs(n - 1);
  for (std::size_t t = 0; t + 1 < n; ++t) diffs[t] = y[t + 1] - y[t];
  std::sort(diffs.begin(), diffs.end());

  Hyperparameters hp;
  hp.nu = sorted_quantile(sorted, 1, 2);
  hp.rho = (sorted_quantile(sorted, 3, 4) - sorted_quantile(sorted, 1, 4)) / (2.0 * qc.alpha);
  hp.sigma = (sorted_quantile(diffs, 3, 4) - sorted_quantile(diffs, 1, 4)) / (2.0 * qc.beta);
  if (subtract_noise) hp.rho = std::sqrt(std::max(0.0, hp.rho * hp.rho - hp.sigma * hp.sigma));
  return apply_floors(hp, y.range());
}

}  // namespace bpcr

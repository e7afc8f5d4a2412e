#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bpcr/numerics.hpp"
#include "bpcr/series.hpp"

namespace bpcr {

/// Quartiles of the standard level prior (alpha) and of the standard noise
/// convolved with itself (beta), used by the robust estimators.
struct QuartileConstants {
  double alpha;
  double beta;

  static QuartileConstants gaussian();  // alpha = 0.6744, beta = 0.6744 * sqrt(2)
  static QuartileConstants cauchy();    // alpha = 1, beta = 2
  // alpha from the prior family, beta from the noise family.
  static QuartileConstants for_models(NoiseModelKind noise, NoiseModelKind prior);
};

/// Mean / variance estimates: nu = sample mean, rho^2 = sample variance
/// (n-1 denominator), sigma^2 = sum of squared successive differences over
/// 2(n-1). With subtract_noise, rho^2 is reduced by sigma^2 before flooring.
/// Throws InsufficientDataError if n < 2.
Hyperparameters estimate_moments(const DataSeries& y, bool subtract_noise = false);

/// Median / interquartile estimates. Quantile [v]_{a*m} is the
/// ceil(a*m)-th smallest entry (1-based). Throws InsufficientDataError if n < 4.
Hyperparameters estimate_quantiles(const DataSeries& y, const QuartileConstants& qc, bool subtract_noise = false);

// ceil(num * m / den)-th smallest of `sorted` (1-based, clamped to [1, m]).
double sorted_quantile(std::span<const double> sorted, std::size_t num, std::size_t den);

struct ScanPoint {
  double sigma;
  LogValue log_evidence;
  std::size_t k_hat;
};

/// log P(y | sigma) and the MAP segment count for each sigma in the grid,
/// with nu and rho held at hp. Closed-form tables when both models are
/// Gaussian, grid quadrature otherwise.
std::vector<ScanPoint> evidence_scan(const DataSeries& y, const Hyperparameters& hp, NoiseModelKind noise,
                                     NoiseModelKind prior, std::span<const double> sigma_grid, std::size_t k_max);

}  // namespace bpcr

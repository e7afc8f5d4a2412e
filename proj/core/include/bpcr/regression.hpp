#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bpcr/dp_engine.hpp"
#include "bpcr/hyperparams.hpp"
#include "bpcr/numerics.hpp"
#include "bpcr/segment_evidence.hpp"
#include "bpcr/series.hpp"

namespace bpcr {

enum class CurveMode { MapK, Mixture };
enum class Estimator { Moments, Quantile };

/// Everything reported by one fit.
struct RegressionResult {
  LogValue log_evidence = kLogZero;
  std::vector<double> ck;
  std::size_t k_hat = 0;
  BoundaryPosterior boundaries;  // B table, b_total and t_hat for k_hat
  std::vector<SegmentLevel> segments;
  CurveMoments curve;
  std::vector<double> curve_std;
  LogLikelihood loglik{};
};

/// Runs the dynamic program and assembles every summary from finished
/// moment tables.
RegressionResult regress(const DataSeries& y, const MomentTables& mt, double sigma, NoiseModelKind noise,
                         std::size_t k_max, CurveMode mode = CurveMode::MapK);

/// Throws InvariantError unless sum ck = 1 +- 1e-9, every boundary row sums
/// to 1 +- 1e-6 and the curve covering mass is 1 +- 1e-6 at every t.
void check_normalization(const RegressionResult& result);

struct FitOptions {
  NoiseModelKind noise = NoiseModelKind::Gaussian;
  NoiseModelKind prior = NoiseModelKind::Gaussian;
  std::optional<std::size_t> k_max;       // default n
  std::optional<Estimator> estimator;     // default: moments for Gaussian noise, quantile otherwise
  std::optional<double> nu;
  std::optional<double> rho;
  std::optional<double> sigma;
  bool rho_subtract = false;
  CurveMode curve = CurveMode::MapK;
};

Estimator default_estimator(NoiseModelKind noise) noexcept;

// The estimator actually applied to y, after the small-sample fallbacks below.
Estimator effective_estimator(const DataSeries& y, const FitOptions& options) noexcept;

/// Estimates what is not overridden, then floors. Falls back from the
/// quantile to the moment estimator below 4 points, and to unit scales
/// (nu = mean) for a single point.
Hyperparameters resolve_hyperparameters(const DataSeries& y, const FitOptions& options);

/// Closed form when noise and prior are both Gaussian, grid quadrature otherwise.
MomentTables build_moment_tables(const DataSeries& y, const Hyperparameters& hp, NoiseModelKind noise,
                                 NoiseModelKind prior);

struct FitReport {
  Hyperparameters hp;
  Estimator estimator;
  std::size_t k_max;
  RegressionResult result;
};

/// Full pipeline; the result is checked with check_normalization().
FitReport fit(const DataSeries& y, const FitOptions& options);

}  // namespace bpcr

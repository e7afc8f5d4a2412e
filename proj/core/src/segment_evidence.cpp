#include "bpcr/segment_evidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bpcr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Precompute noise log-densities for all (t, grid point) pairs when the
// table stays below this many entries (64 MB).
constexpr std::size_t kNoiseCacheLimit = std::size_t{1} << 23;

}  // namespace

MomentTables::MomentTables(std::size_t n)
    : n_(n), log_a0_((n + 1) * (n + 1), kLogZero), m1_((n + 1) * (n + 1), kNaN), m2_((n + 1) * (n + 1), kNaN) {}

double MomentTables::variance(std::size_t i, std::size_t j) const noexcept {
  const double m1 = mean(i, j);
  return std::max(0.0, second_moment(i, j) - m1 * m1);
}

void MomentTables::set(std::size_t i, std::size_t j, LogValue log_a0, double m1, double m2) noexcept {
  const std::size_t k = index(i, j);
  log_a0_[k] = log_a0;
  m1_[k] = m1;
  m2_[k] = m2;
}

MomentTables gaussian_moments(const DataSeries& y, const Hyperparameters& hp) {
  hp.validate();
  const std::size_t n = y.size();
  MomentTables tables(n);

  const double sigma2 = hp.sigma * hp.sigma;
  const double rho2 = hp.rho * hp.rho;
  const double ratio = sigma2 / rho2;
  const double log_2pi_sigma2 = std::log(2.0 * kPi * sigma2);

  for (std::size_t i = 0; i < n; ++i) {
    // Welford running mean / sum of squared deviations over y_{i+1..j}.
    double mean = 0.0;
    double ssd = 0.0;
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double d = static_cast<double>(j - i);
      const double x = y[j - 1];
      const double delta = x - mean;
      mean += delta / d;
      ssd += delta * (x - mean);

      // s - m^2/(d + sigma^2/rho^2) with s = sum (y-nu)^2, m = sum (y-nu)
      const double dev = mean - hp.nu;
      const double quad = ssd + d * ratio * dev * dev / (d + ratio);
      const double log_a0 =
          -quad / (2.0 * sigma2) - 0.5 * d * log_2pi_sigma2 - 0.5 * std::log1p(d * rho2 / sigma2);

      const double post_mean = hp.nu + d * dev * rho2 / (d * rho2 + sigma2);
      const double post_var = sigma2 * rho2 / (d * rho2 + sigma2);
      tables.set(i, j, log_a0, post_mean, post_mean * post_mean + post_var);
    }
  }
  return tables;
}

GridSpec GridSpec::from_hyperparameters(const Hyperparameters& hp) {
  hp.validate();
  GridSpec grid{hp.nu - 25.0 * hp.rho, hp.nu + 25.0 * hp.rho, hp.sigma / 10.0};
  const double span = grid.hi - grid.lo;
  if (span / grid.step + 1.0 > static_cast<double>(kMaxPoints)) {
    grid.step = span / static_cast<double>(kMaxPoints - 1);
  }
  return grid;
}

void GridSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw std::domain_error("grid: need lo < hi");
  if (!(step > 0.0) || !std::isfinite(step)) throw std::domain_error("grid: step must be positive");
}

std::size_t GridSpec::point_count() const {
  validate();
  return static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
}

MomentTables grid_moments(const DataSeries& y, const Hyperparameters& hp, const LocationScaleModel& noise,
                          const LocationScaleModel& prior, const GridSpec& grid) {
  hp.validate();
  const std::size_t n = y.size();
  const std::size_t points = grid.point_count();
  MomentTables tables(n);

  std::vector<double> mu(points);
  std::vector<double> log_prior(points);
  for (std::size_t g = 0; g < points; ++g) {
    mu[g] = grid.point(g);
    log_prior[g] = prior.log_density(mu[g], hp.nu, hp.rho);
  }

  std::vector<double> noise_cache;
  const bool cached = n * points <= kNoiseCacheLimit;
  if (cached) {
    noise_cache.resize(n * points);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t g = 0; g < points; ++g) noise_cache[t * points + g] = noise.log_density(y[t], mu[g], hp.sigma);
    }
  }

  const double log_step = std::log(grid.step);
  std::vector<double> log_r(points);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(log_prior.begin(), log_prior.end(), log_r.begin());
    for (std::size_t j = i + 1; j <= n; ++j) {
      double hi = kLogZero;
      std::size_t pivot = 0;
      if (cached) {
        const double* row = noise_cache.data() + (j - 1) * points;
        for (std::size_t g = 0; g < points; ++g) {
          log_r[g] += row[g];
          if (log_r[g] > hi) {
            hi = log_r[g];
            pivot = g;
          }
        }
      } else {
        for (std::size_t g = 0; g < points; ++g) {
          log_r[g] += noise.log_density(y[j - 1], mu[g], hp.sigma);
          if (log_r[g] > hi) {
            hi = log_r[g];
            pivot = g;
          }
        }
      }
      if (hi == kLogZero) continue;  // zero evidence; left undefined

      // Moments about the heaviest grid point keep the variance well conditioned.
      const double centre = mu[pivot];
      double s0 = 0.0;
      double s1 = 0.0;
      double s2 = 0.0;
      for (std::size_t g = 0; g < points; ++g) {
        const double w = std::exp(log_r[g] - hi);
        const double x = mu[g] - centre;
        s0 += w;
        s1 += w * x;
        s2 += w * x * x;
      }
      const double shift = s1 / s0;
      const double var = std::max(0.0, s2 / s0 - shift * shift);
      const double m1 = centre + shift;
      tables.set(i, j, log_step + hi + std::log(s0), m1, m1 * m1 + var);
    }
  }
  return tables;
}

}  // namespace bpcr

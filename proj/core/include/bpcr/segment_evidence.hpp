#pragma once

#include <cstddef>
#include <vector>

#include "bpcr/numerics.hpp"
#include "bpcr/series.hpp"

namespace bpcr {

/// Single-segment evidence and level moments for every interval (i, j],
/// 0 <= i < j <= n: log A0_ij, and the posterior mean A1/A0 and second
/// moment A2/A0 of the level of a segment covering y_{i+1}..y_j.
///
/// Raw A1, A2 are never stored; they overflow for n in the hundreds.
class MomentTables {
 public:
  explicit MomentTables(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  LogValue log_a0(std::size_t i, std::size_t j) const noexcept { return log_a0_[index(i, j)]; }
  // NaN when the interval has zero evidence.
  double mean(std::size_t i, std::size_t j) const noexcept { return m1_[index(i, j)]; }
  double second_moment(std::size_t i, std::size_t j) const noexcept { return m2_[index(i, j)]; }
  double variance(std::size_t i, std::size_t j) const noexcept;

  bool defined(std::size_t i, std::size_t j) const noexcept { return log_a0_[index(i, j)] != kLogZero; }

  void set(std::size_t i, std::size_t j, LogValue log_a0, double m1, double m2) noexcept;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * (n_ + 1) + j; }

  std::size_t n_;
  std::vector<double> log_a0_;
  std::vector<double> m1_;
  std::vector<double> m2_;
};

/// Closed form for Gaussian noise with a Gaussian level prior. O(n^2).
/// Throws std::domain_error if hp is invalid.
MomentTables gaussian_moments(const DataSeries& y, const Hyperparameters& hp);

/// Uniform integration grid lo, lo+step, ..., covering [lo, hi].
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  // Hard cap on grid size; from_hyperparameters() widens the step to respect it.
  static constexpr std::size_t kMaxPoints = 50000;

  // step sigma/10 over [nu - 25 rho, nu + 25 rho].
  static GridSpec from_hyperparameters(const Hyperparameters& hp);

  std::size_t point_count() const;
  double point(std::size_t k) const noexcept { return lo + static_cast<double>(k) * step; }
  // Throws std::domain_error unless lo < hi and step > 0.
  void validate() const;
};

/// Rectangle-rule quadrature over `grid` of prior(mu) * prod_t noise(y_t | mu),
/// accumulated per grid point in log space. Works for any pair of
/// location-scale models; O(n^2 * grid points).
MomentTables grid_moments(const DataSeries& y, const Hyperparameters& hp, const LocationScaleModel& noise,
                          const LocationScaleModel& prior, const GridSpec& grid);

}  // namespace bpcr

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bpcr {

/// Observations y_1..y_n. Construction rejects empty input and non-finite
/// values with InputError, so a live DataSeries is always usable.
class DataSeries {
 public:
  explicit DataSeries(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  // 0-based: operator[](t-1) is y_t.
  double operator[](std::size_t idx) const noexcept { return values_[idx]; }
  std::span<const double> values() const noexcept { return values_; }

  // max - min, 0 for constant data.
  double range() const noexcept;

 private:
  std::vector<double> values_;
};

/// Level-prior location nu, level-prior scale rho, in-segment noise scale sigma.
struct Hyperparameters {
  double nu = 0.0;
  double rho = 1.0;
  double sigma = 1.0;

  // Throws std::domain_error unless rho, sigma > 0 and all finite.
  void validate() const;
};

// Smallest admissible rho / sigma for data of the given range:
// 1e-12 * range, or 1e-12 when the range is 0.
double scale_floor(double data_range) noexcept;

Hyperparameters apply_floors(Hyperparameters hp, double data_range) noexcept;

}  // namespace bpcr

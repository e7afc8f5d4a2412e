#include "bpcr/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bpcr/errors.hpp"

namespace bpcr {

DataSeries::DataSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("data series is empty");
  for (std::size_t t = 0; t < values_.size(); ++t) {
    if (!std::isfinite(values_[t])) {
      throw InputError("non-finite value at index " + std::to_string(t + 1));
    }
  }
}

double DataSeries::range() const noexcept {
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  return *hi - *lo;
}

void Hyperparameters::validate() const {
  if (!std::isfinite(nu)) throw std::domain_error("hyperparameter nu must be finite");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("hyperparameter rho must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::domain_error("hyperparameter sigma must be positive");
}

double scale_floor(double data_range) noexcept {
  return 1e-12 * (data_range > 0.0 ? data_range : 1.0);
}

Hyperparameters apply_floors(Hyperparameters hp, double data_range) noexcept {
  const double floor = scale_floor(data_range);
  if (!(hp.rho >= floor)) hp.rho = floor;
  if (!(hp.sigma >= floor)) hp.sigma = floor;
  return hp;
}

}  // namespace bpcr

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>

namespace bpcr {

// Natural logarithm of a non-negative quantity. -inf encodes zero.
using LogValue = double;

inline constexpr LogValue kLogZero = -std::numeric_limits<double>::infinity();

inline constexpr double kPi = 3.14159265358979323846;

// log(e^a + e^b), with log_sum_exp(-inf, -inf) = -inf.
inline LogValue log_sum_exp(LogValue a, LogValue b) noexcept {
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  if (lo == kLogZero) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(sum_i e^{x_i}) over a range; -inf for an empty range or all -inf.
LogValue log_sum_exp(std::span<const double> terms) noexcept;

// log C(n, k). Throws std::domain_error if k > n.
LogValue log_binomial(long long n, long long k);

enum class NoiseModelKind { Gaussian, Cauchy };

std::string to_string(NoiseModelKind kind);

// log P(y | location mu, scale s). Throws std::domain_error if s <= 0.
LogValue log_density(NoiseModelKind kind, double y, double mu, double s);

/// A symmetric location-scale family given by the log-density of its
/// standard member. Gaussian and Cauchy are built in; any other symmetric
/// density can be plugged in through custom().
class LocationScaleModel {
 public:
  using StandardLogPdf = std::function<double(double z)>;

  static LocationScaleModel gaussian();
  static LocationScaleModel cauchy();
  static LocationScaleModel of(NoiseModelKind kind);
  static LocationScaleModel custom(std::string name, StandardLogPdf standard_log_pdf);

  const std::string& name() const noexcept { return name_; }

  LogValue log_density(double y, double location, double scale) const;

 private:
  LocationScaleModel(std::string name, StandardLogPdf pdf) : name_(std::move(name)), pdf_(std::move(pdf)) {}

  std::string name_;
  StandardLogPdf pdf_;
};

}  // namespace bpcr

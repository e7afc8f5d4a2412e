#include "bpcr/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bpcr {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;

// Below this, log C(n,k) is summed term by term; above it lgammal is
// accurate enough relative to the (large) result.
constexpr long long kDirectBinomialLimit = 32;

}  // namespace

LogValue log_sum_exp(std::span<const double> terms) noexcept {
  double hi = kLogZero;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == kLogZero) return kLogZero;
  if (std::isinf(hi)) return hi;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

LogValue log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                            " k=" + std::to_string(k));
  }
  const long long m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (m <= kDirectBinomialLimit) {
    // C(n,m) = prod_{i=1..m} (n-m+i)/i
    long double acc = 0.0L;
    for (long long i = 1; i <= m; ++i) {
      acc += std::log(static_cast<long double>(n - m + i) / static_cast<long double>(i));
    }
    return static_cast<double>(acc);
  }
  const long double nl = static_cast<long double>(n);
  const long double ml = static_cast<long double>(m);
  return static_cast<double>(std::lgamma(nl + 1.0L) - std::lgamma(ml + 1.0L) - std::lgamma(nl - ml + 1.0L));
}

std::string to_string(NoiseModelKind kind) {
  switch (kind) {
    case NoiseModelKind::Gaussian:
      return "gauss";
    case NoiseModelKind::Cauchy:
      return "cauchy";
  }
  return "unknown";
}

LogValue log_density(NoiseModelKind kind, double y, double mu, double s) {
  if (!(s > 0.0)) throw std::domain_error("log_density: scale must be positive");
  const double r = y - mu;
  switch (kind) {
    case NoiseModelKind::Gaussian:
      return -0.5 * (r / s) * (r / s) - kHalfLog2Pi - std::log(s);
    case NoiseModelKind::Cauchy:
      return std::log(s) - kLogPi - std::log(s * s + r * r);
  }
  throw std::domain_error("log_density: unknown model kind");
}

LocationScaleModel LocationScaleModel::gaussian() {
  return {"gauss", [](double z) { return -0.5 * z * z - kHalfLog2Pi; }};
}

LocationScaleModel LocationScaleModel::cauchy() {
  return {"cauchy", [](double z) { return -kLogPi - std::log1p(z * z); }};
}

LocationScaleModel LocationScaleModel::of(NoiseModelKind kind) {
  return kind == NoiseModelKind::Gaussian ? gaussian() : cauchy();
}

LocationScaleModel LocationScaleModel::custom(std::string name, StandardLogPdf standard_log_pdf) {
  if (!standard_log_pdf) throw std::invalid_argument("LocationScaleModel: empty density");
  return {std::move(name), std::move(standard_log_pdf)};
}

LogValue LocationScaleModel::log_density(double y, double location, double scale) const {
  if (!(scale > 0.0)) throw std::domain_error("log_density: scale must be positive");
  return pdf_((y - location) / scale) - std::log(scale);
}

}  // namespace bpcr

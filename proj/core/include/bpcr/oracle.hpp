#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bpcr/numerics.hpp"
#include "bpcr/segment_evidence.hpp"

namespace bpcr::oracle {

// Largest n the enumeration accepts (2^(n-1) segmentations).
inline constexpr std::size_t kMaxLength = 14;

/// 0 = t_0 < t_1 < ... < t_k = n.
struct Segmentation {
  std::vector<std::size_t> t;
  std::size_t k() const noexcept { return t.size() - 1; }
};

// Every segmentation of n points into k segments, in lexicographic order.
std::vector<Segmentation> enumerate_segmentations(std::size_t n, std::size_t k);

/// Brute-force posterior summaries, summed directly over every
/// segmentation with k <= k_max. Reference for the dynamic program only.
struct EnumeratedPosterior {
  LogValue log_evidence;
  std::vector<double> ck;
  std::size_t k_hat;
  std::vector<std::size_t> segmentation_count;  // per k = 1..k_max
  std::vector<double> boundary;                 // (k_hat+1) x (n+1)
  std::vector<std::size_t> t_hat;
  std::vector<double> seg_mean;                 // at t_hat; NaN for empty segments
  std::vector<double> curve_mean;               // conditioned on k_hat
  std::vector<double> curve_second;
};

/// Throws std::domain_error if n > kMaxLength or k_max is outside 1..n.
EnumeratedPosterior enumerate_posterior(const MomentTables& mt, std::size_t k_max);

/// Largest relative deviation between the dynamic program and the
/// enumeration, per reported quantity. A differing k_hat or t_hat counts
/// as an infinite deviation.
struct Deviation {
  double log_evidence = 0.0;
  double ck = 0.0;
  double boundary = 0.0;
  double t_hat = 0.0;
  double seg_mean = 0.0;
  double curve_mean = 0.0;

  double max() const noexcept;
  void merge(const Deviation& other) noexcept;
};

// |a - b| / max(|a|, |b|); 0 when a == b.
double relative_deviation(double a, double b) noexcept;

Deviation compare_with_dp(const MomentTables& mt, std::size_t k_max);

struct CheckReport {
  std::size_t instances = 0;
  Deviation worst;
};

/// `trials` random Gaussian instances with n uniform in [min(2, n_max), n_max],
/// Gaussian closed-form tables at moment estimates, k_max = n.
CheckReport run_check(std::size_t n_max, std::size_t trials, std::uint64_t seed);

}  // namespace bpcr::oracle

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bpcr/numerics.hpp"
#include "bpcr/segment_evidence.hpp"
#include "bpcr/series.hpp"

namespace bpcr {

/// Log-space left/right recursion tables.
///
///   left(k, j)  = log sum over segmentations of y_1..y_j into k segments
///                 of the product of single-segment evidences
///   right(k, i) = the same for y_{i+1}..y_n
///
/// Both carry no boundary-prior factor; left(k, n) == right(k, 0) is
/// C(n-1, k-1) * P(y | k).
class DpTables {
 public:
  DpTables(std::size_t n, std::size_t k_max);

  std::size_t size() const noexcept { return n_; }
  std::size_t k_max() const noexcept { return k_max_; }

  LogValue left(std::size_t k, std::size_t j) const noexcept { return left_[k * (n_ + 1) + j]; }
  LogValue right(std::size_t k, std::size_t i) const noexcept { return right_[k * (n_ + 1) + i]; }

 private:
  friend DpTables build_dp(const MomentTables& mt, std::size_t k_max);

  std::size_t n_;
  std::size_t k_max_;
  std::vector<double> left_;
  std::vector<double> right_;
};

/// O(k_max * n^2). Throws std::domain_error unless 1 <= k_max <= n.
DpTables build_dp(const MomentTables& mt, std::size_t k_max);

struct SegmentCountPosterior {
  LogValue log_evidence;
  std::vector<double> ck;  // ck[k-1] = P(k | y), k = 1..k_max
  std::size_t k_hat;       // smallest k attaining the maximum
};

/// Evidence under the uniform prior on k in 1..k_max and uniform boundary
/// prior. Throws InvariantError if every L(k, n) is zero.
SegmentCountPosterior evidence_and_ck(const DpTables& dp);

struct BoundaryPosterior {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<double> table;         // (k+1) x (n+1), row p = P(t_p = h | y, k)
  std::vector<double> b_total;       // sum over inner boundaries p = 1..k-1
  std::vector<std::size_t> t_hat;    // per-boundary argmax, t_hat[0] = 0, t_hat[k] = n

  double at(std::size_t p, std::size_t h) const noexcept { return table[p * (n + 1) + h]; }
};

BoundaryPosterior boundary_posterior(const DpTables& dp, std::size_t k);

struct SegmentLevel {
  std::size_t begin;  // covers y_{begin+1} .. y_end
  std::size_t end;
  bool empty;         // coinciding (or crossing) boundaries; no moments
  double mean;
  double std_dev;
};

std::vector<SegmentLevel> segment_levels(const MomentTables& mt, std::span<const std::size_t> t_hat);

// Piecewise-constant fit from the non-empty segments, length n.
std::vector<double> piecewise_fit(std::size_t n, std::span<const SegmentLevel> segments);

/// Posterior moments of the level at each t = 1..n (stored at t-1).
struct CurveMoments {
  std::vector<double> mass;    // total posterior weight of segments covering t, ~1
  std::vector<double> mean;
  std::vector<double> second;  // E[mu_t^2]

  std::vector<double> std_dev() const;
};

/// log F0_ij for a fixed segment count k: the log posterior probability that
/// (i, j] is one segment. (n+1) x (n+1), row-major, -inf where impossible.
std::vector<double> segment_cover_weights(const MomentTables& mt, const DpTables& dp, std::size_t k);

/// Regression curve conditioned on k, computed with the incremental sweep
/// over t. O(k * n^2).
CurveMoments regression_curve(const MomentTables& mt, const DpTables& dp, std::size_t k);

/// P(k|y)-weighted mixture of the per-k curves. Values of k whose posterior
/// mass is below min_weight are skipped and the rest renormalized.
CurveMoments mixture_curve(const MomentTables& mt, const DpTables& dp, std::span<const double> ck,
                           double min_weight = 1e-12);

struct LogLikelihood {
  double ll;
  double mean;  // E[ll | f]
  double std;   // sqrt(Var[ll | f])

  double relative() const noexcept { return (ll - mean) / std; }
};

/// Log-likelihood of y under the fitted function and its expectation and
/// spread when y really is f + iid noise of scale sigma.
LogLikelihood loglik_diagnostics(const DataSeries& y, std::span<const double> fitted, double sigma,
                                 NoiseModelKind kind);

}  // namespace bpcr

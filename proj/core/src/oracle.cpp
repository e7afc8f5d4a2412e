#include "bpcr/oracle.hpp"

#include "bpcr/dp_engine.hpp"
#include "bpcr/hyperparams.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace bpcr::oracle {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Segmentation from_mask(std::size_t n, std::uint32_t mask) {
  Segmentation s;
  s.t.push_back(0);
  for (std::size_t b = 1; b < n; ++b) {
    if (mask & (std::uint32_t{1} << (b - 1))) s.t.push_back(b);
  }
  s.t.push_back(n);
  return s;
}

}  // namespace

std::vector<Segmentation> enumerate_segmentations(std::size_t n, std::size_t k) {
  if (n == 0 || n > kMaxLength) throw std::domain_error("enumerate_segmentations: n outside 1.." + std::to_string(kMaxLength));
  std::vector<Segmentation> out;
  const std::uint32_t masks = std::uint32_t{1} << (n - 1);
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) + 1 == k) out.push_back(from_mask(n, mask));
  }
  std::sort(out.begin(), out.end(), [](const Segmentation& a, const Segmentation& b) { return a.t < b.t; });
  return out;
}

EnumeratedPosterior enumerate_posterior(const MomentTables& mt, std::size_t k_max) {
  const std::size_t n = mt.size();
  if (n == 0 || n > kMaxLength) throw std::domain_error("oracle: n must lie in 1.." + std::to_string(kMaxLength));
  if (k_max < 1 || k_max > n) throw std::domain_error("oracle: k_max must lie in 1..n");

  struct Term {
    Segmentation seg;
    double log_weight;
  };
  std::vector<Term> terms;
  const std::uint32_t masks = std::uint32_t{1} << (n - 1);
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    Segmentation seg = from_mask(n, mask);
    const std::size_t k = seg.k();
    if (k > k_max) continue;
    double lw = -std::log(static_cast<double>(binomial(n - 1, k - 1))) - std::log(static_cast<double>(k_max));
    for (std::size_t m = 1; m <= k; ++m) lw += mt.log_a0(seg.t[m - 1], seg.t[m]);
    terms.push_back({std::move(seg), lw});
  }

  // One global offset; everything below is plain linear-space summation.
  double offset = -std::numeric_limits<double>::infinity();
  for (const auto& term : terms) offset = std::max(offset, term.log_weight);

  EnumeratedPosterior out;
  out.ck.assign(k_max, 0.0);
  out.segmentation_count.assign(k_max, 0);
  std::vector<double> weight(terms.size());
  double total = 0.0;
  for (std::size_t s = 0; s < terms.size(); ++s) {
    weight[s] = std::exp(terms[s].log_weight - offset);
    total += weight[s];
    out.ck[terms[s].seg.k() - 1] += weight[s];
    out.segmentation_count[terms[s].seg.k() - 1] += 1;
  }
  out.log_evidence = offset + std::log(total);

  out.k_hat = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (out.ck[k - 1] > out.ck[out.k_hat - 1]) out.k_hat = k;
  }
  const double mass_k = out.ck[out.k_hat - 1];
  for (double& c : out.ck) c /= total;

  const std::size_t kh = out.k_hat;
  out.boundary.assign((kh + 1) * (n + 1), 0.0);
  out.curve_mean.assign(n, 0.0);
  out.curve_second.assign(n, 0.0);
  for (std::size_t s = 0; s < terms.size(); ++s) {
    const Segmentation& seg = terms[s].seg;
    if (seg.k() != kh) continue;
    const double w = weight[s] / mass_k;
    for (std::size_t p = 0; p <= kh; ++p) out.boundary[p * (n + 1) + seg.t[p]] += w;
    for (std::size_t m = 1; m <= kh; ++m) {
      const std::size_t i = seg.t[m - 1];
      const std::size_t j = seg.t[m];
      for (std::size_t t = i; t < j; ++t) {
        out.curve_mean[t] += w * mt.mean(i, j);
        out.curve_second[t] += w * mt.second_moment(i, j);
      }
    }
  }

  out.t_hat.assign(kh + 1, 0);
  for (std::size_t p = 0; p <= kh; ++p) {
    for (std::size_t h = 0; h <= n; ++h) {
      if (out.boundary[p * (n + 1) + h] > out.boundary[p * (n + 1) + out.t_hat[p]]) out.t_hat[p] = h;
    }
  }
  for (std::size_t m = 1; m <= kh; ++m) {
    const std::size_t i = out.t_hat[m - 1];
    const std::size_t j = out.t_hat[m];
    out.seg_mean.push_back(j > i ? mt.mean(i, j) : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

double Deviation::max() const noexcept {
  return std::max({log_evidence, ck, boundary, t_hat, seg_mean, curve_mean});
}

void Deviation::merge(const Deviation& other) noexcept {
  log_evidence = std::max(log_evidence, other.log_evidence);
  ck = std::max(ck, other.ck);
  boundary = std::max(boundary, other.boundary);
  t_hat = std::max(t_hat, other.t_hat);
  seg_mean = std::max(seg_mean, other.seg_mean);
  curve_mean = std::max(curve_mean, other.curve_mean);
}

double relative_deviation(double a, double b) noexcept {
  if (a == b) return 0.0;
  if (std::isnan(a) && std::isnan(b)) return 0.0;
  const double scale = std::max(std::abs(a), std::abs(b));
  if (!std::isfinite(scale)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / scale;
}

Deviation compare_with_dp(const MomentTables& mt, std::size_t k_max) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const EnumeratedPosterior ref = enumerate_posterior(mt, k_max);
  const DpTables dp = build_dp(mt, k_max);
  const SegmentCountPosterior post = evidence_and_ck(dp);
  const std::size_t n = mt.size();

  Deviation d;
  d.log_evidence = relative_deviation(post.log_evidence, ref.log_evidence);
  for (std::size_t k = 0; k < k_max; ++k) d.ck = std::max(d.ck, relative_deviation(post.ck[k], ref.ck[k]));
  if (post.k_hat != ref.k_hat) {
    d.t_hat = d.boundary = d.seg_mean = d.curve_mean = kInf;
    return d;
  }

  const BoundaryPosterior bp = boundary_posterior(dp, post.k_hat);
  for (std::size_t p = 0; p <= post.k_hat; ++p) {
    for (std::size_t h = 0; h <= n; ++h) {
      d.boundary = std::max(d.boundary, relative_deviation(bp.at(p, h), ref.boundary[p * (n + 1) + h]));
    }
  }
  if (bp.t_hat != ref.t_hat) d.t_hat = kInf;

  const std::vector<SegmentLevel> levels = segment_levels(mt, bp.t_hat);
  for (std::size_t m = 0; m < levels.size() && m < ref.seg_mean.size(); ++m) {
    d.seg_mean = std::max(d.seg_mean, relative_deviation(levels[m].mean, ref.seg_mean[m]));
  }

  const CurveMoments curve = regression_curve(mt, dp, post.k_hat);
  for (std::size_t t = 0; t < n; ++t) {
    d.curve_mean = std::max(d.curve_mean, relative_deviation(curve.mean[t], ref.curve_mean[t]));
  }
  return d;
}

CheckReport run_check(std::size_t n_max, std::size_t trials, std::uint64_t seed) {
  if (n_max < 1 || n_max > kMaxLength) throw std::domain_error("check: n_max must lie in 1.." + std::to_string(kMaxLength));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::normal_distribution<double> jump(0.0, 3.0);
  std::bernoulli_distribution breaks(0.3);
  std::uniform_int_distribution<std::size_t> length(std::min<std::size_t>(2, n_max), n_max);

  CheckReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = length(rng);
    std::vector<double> values(n);
    double level = jump(rng);
    for (double& v : values) {
      if (breaks(rng)) level += jump(rng);
      v = level + noise(rng);
    }
    const DataSeries y(std::move(values));
    const Hyperparameters hp = n >= 2 ? estimate_moments(y) : Hyperparameters{y[0], 1.0, 1.0};
    report.worst.merge(compare_with_dp(gaussian_moments(y, hp), n));
    ++report.instances;
  }
  return report;
}

}  // namespace bpcr::oracle

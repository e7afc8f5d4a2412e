#include "bpcr/dp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bpcr/errors.hpp"

namespace bpcr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_k(const DpTables& dp, std::size_t k) {
  if (k < 1 || k > dp.k_max()) {
    throw std::domain_error("segment count " + std::to_string(k) + " outside 1.." + std::to_string(dp.k_max()));
  }
}

}  // namespace

DpTables::DpTables(std::size_t n, std::size_t k_max)
    : n_(n), k_max_(k_max), left_((k_max + 1) * (n + 1), kLogZero), right_((k_max + 1) * (n + 1), kLogZero) {}

DpTables build_dp(const MomentTables& mt, std::size_t k_max) {
  const std::size_t n = mt.size();
  if (k_max < 1 || k_max > n) {
    throw std::domain_error("k_max must lie in 1..n (n=" + std::to_string(n) + ", k_max=" + std::to_string(k_max) + ")");
  }
  DpTables dp(n, k_max);
  const std::size_t w = n + 1;

  // Column-major copy so the left recursion reads A0(., j) contiguously.
  std::vector<double> a0_by_end(w * w, kLogZero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) a0_by_end[j * w + i] = mt.log_a0(i, j);
  }

  dp.left_[0] = 0.0;
  dp.right_[n] = 0.0;
  std::vector<double> terms(w);

  for (std::size_t k = 1; k <= k_max; ++k) {
    const double* prev_left = dp.left_.data() + (k - 1) * w;
    double* cur_left = dp.left_.data() + k * w;
    for (std::size_t j = k; j <= n; ++j) {
      const double* col = a0_by_end.data() + j * w;
      std::size_t c = 0;
      for (std::size_t h = k - 1; h < j; ++h) terms[c++] = prev_left[h] + col[h];
      cur_left[j] = log_sum_exp(std::span<const double>(terms.data(), c));
    }

    const double* prev_right = dp.right_.data() + (k - 1) * w;
    double* cur_right = dp.right_.data() + k * w;
    for (std::size_t i = 0; i + k <= n; ++i) {
      std::size_t c = 0;
      for (std::size_t h = i + 1; h <= n - k + 1; ++h) terms[c++] = mt.log_a0(i, h) + prev_right[h];
      cur_right[i] = log_sum_exp(std::span<const double>(terms.data(), c));
    }
  }
  return dp;
}

SegmentCountPosterior evidence_and_ck(const DpTables& dp) {
  const std::size_t n = dp.size();
  const std::size_t k_max = dp.k_max();
  const double log_prior_k = -std::log(static_cast<double>(k_max));

  std::vector<double> terms(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    terms[k - 1] = dp.left(k, n) - log_binomial(static_cast<long long>(n) - 1, static_cast<long long>(k) - 1) + log_prior_k;
  }
  const LogValue log_e = log_sum_exp(terms);
  if (!std::isfinite(log_e)) throw InvariantError("degenerate evidence: no segmentation has positive weight");

  SegmentCountPosterior out{log_e, std::vector<double>(k_max), 1};
  double best = kLogZero;
  for (std::size_t k = 1; k <= k_max; ++k) {
    out.ck[k - 1] = std::exp(terms[k - 1] - log_e);
    if (terms[k - 1] > best) {
      best = terms[k - 1];
      out.k_hat = k;
    }
  }
  return out;
}

BoundaryPosterior boundary_posterior(const DpTables& dp, std::size_t k) {
  require_k(dp, k);
  const std::size_t n = dp.size();
  const double log_total = dp.left(k, n);

  BoundaryPosterior out;
  out.k = k;
  out.n = n;
  out.table.assign((k + 1) * (n + 1), 0.0);
  out.b_total.assign(n + 1, 0.0);
  out.t_hat.assign(k + 1, 0);

  for (std::size_t p = 0; p <= k; ++p) {
    double best = -1.0;
    for (std::size_t h = 0; h <= n; ++h) {
      const double lw = dp.left(p, h) + dp.right(k - p, h);
      const double b = lw == kLogZero ? 0.0 : std::exp(lw - log_total);
      out.table[p * (n + 1) + h] = b;
      if (b > best) {
        best = b;
        out.t_hat[p] = h;
      }
      if (p > 0 && p < k) out.b_total[h] += b;
    }
  }
  return out;
}

std::vector<SegmentLevel> segment_levels(const MomentTables& mt, std::span<const std::size_t> t_hat) {
  std::vector<SegmentLevel> out;
  if (t_hat.size() < 2) return out;
  out.reserve(t_hat.size() - 1);
  for (std::size_t m = 1; m < t_hat.size(); ++m) {
    const std::size_t i = t_hat[m - 1];
    const std::size_t j = t_hat[m];
    if (j <= i || !mt.defined(i, j)) {
      out.push_back({i, j, true, kNaN, kNaN});
      continue;
    }
    out.push_back({i, j, false, mt.mean(i, j), std::sqrt(mt.variance(i, j))});
  }
  return out;
}

std::vector<double> piecewise_fit(std::size_t n, std::span<const SegmentLevel> segments) {
  std::vector<double> f(n, kNaN);
  for (const auto& s : segments) {
    if (s.empty) continue;
    for (std::size_t t = s.begin; t < s.end && t < n; ++t) {
      if (std::isnan(f[t])) f[t] = s.mean;
    }
  }
  return f;
}

std::vector<double> CurveMoments::std_dev() const {
  std::vector<double> out(mean.size());
  for (std::size_t t = 0; t < mean.size(); ++t) out[t] = std::sqrt(std::max(0.0, second[t] - mean[t] * mean[t]));
  return out;
}

std::vector<double> segment_cover_weights(const MomentTables& mt, const DpTables& dp, std::size_t k) {
  require_k(dp, k);
  const std::size_t n = dp.size();
  const double log_total = dp.left(k, n);
  std::vector<double> weights((n + 1) * (n + 1), kLogZero);
  std::vector<double> terms(k);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (!mt.defined(i, j)) continue;
      // segment (i, j] is segment number m: m-1 segments before i, k-m after j
      const std::size_t m_lo = std::max<std::size_t>(1, k > n - j ? k - (n - j) : 1);
      const std::size_t m_hi = std::min(k, i + 1);
      if (m_lo > m_hi) continue;
      std::size_t c = 0;
      for (std::size_t m = m_lo; m <= m_hi; ++m) terms[c++] = dp.left(m - 1, i) + dp.right(k - m, j);
      const double lw = log_sum_exp(std::span<const double>(terms.data(), c));
      if (lw == kLogZero) continue;
      weights[i * (n + 1) + j] = lw + mt.log_a0(i, j) - log_total;
    }
  }
  return weights;
}

CurveMoments regression_curve(const MomentTables& mt, const DpTables& dp, std::size_t k) {
  const std::size_t n = dp.size();
  const std::size_t w = n + 1;
  const std::vector<double> log_f0 = segment_cover_weights(mt, dp, k);

  auto moments = [&](std::size_t i, std::size_t j, double& f0, double& f1, double& f2) {
    const double lw = log_f0[i * w + j];
    if (lw == kLogZero) {
      f0 = f1 = f2 = 0.0;
      return;
    }
    f0 = std::exp(lw);
    f1 = f0 * mt.mean(i, j);
    f2 = f0 * mt.second_moment(i, j);
  };

  CurveMoments out{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  double acc0 = 0.0;
  double acc1 = 0.0;
  double acc2 = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  // value at t+1 = value at t - (segments ending at t) + (segments starting after t)
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < t; ++i) {
      moments(i, t, f0, f1, f2);
      acc0 -= f0;
      acc1 -= f1;
      acc2 -= f2;
    }
    for (std::size_t j = t + 1; j <= n; ++j) {
      moments(t, j, f0, f1, f2);
      acc0 += f0;
      acc1 += f1;
      acc2 += f2;
    }
    out.mass[t] = acc0;
    out.mean[t] = acc1;
    out.second[t] = acc2;
  }
  return out;
}

CurveMoments mixture_curve(const MomentTables& mt, const DpTables& dp, std::span<const double> ck, double min_weight) {
  const std::size_t n = dp.size();
  if (ck.size() != dp.k_max()) throw std::invalid_argument("mixture_curve: ck length must equal k_max");

  CurveMoments out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  double used = 0.0;
  for (std::size_t k = 1; k <= ck.size(); ++k) {
    const double weight = ck[k - 1];
    if (!(weight >= min_weight)) continue;
    const CurveMoments part = regression_curve(mt, dp, k);
    for (std::size_t t = 0; t < n; ++t) {
      out.mass[t] += weight * part.mass[t];
      out.mean[t] += weight * part.mean[t];
      out.second[t] += weight * part.second[t];
    }
    used += weight;
  }
  if (!(used > 0.0)) throw InvariantError("mixture_curve: no segment count carries posterior weight");
  for (std::size_t t = 0; t < n; ++t) {
    out.mass[t] /= used;
    out.mean[t] /= used;
    out.second[t] /= used;
  }
  return out;
}

LogLikelihood loglik_diagnostics(const DataSeries& y, std::span<const double> fitted, double sigma,
                                 NoiseModelKind kind) {
  const std::size_t n = y.size();
  if (fitted.size() != n) throw std::invalid_argument("loglik_diagnostics: fitted length must equal n");
  if (!(sigma > 0.0)) throw std::domain_error("loglik_diagnostics: sigma must be positive");

  double ll = 0.0;
  for (std::size_t t = 0; t < n; ++t) ll += log_density(kind, y[t], fitted[t], sigma);

  const double nd = static_cast<double>(n);
  switch (kind) {
    case NoiseModelKind::Gaussian:
      return {ll, -0.5 * nd * std::log(2.0 * kPi * std::exp(1.0) * sigma * sigma), std::sqrt(nd / 2.0)};
    case NoiseModelKind::Cauchy:
      return {ll, -nd * std::log(4.0 * kPi * sigma), std::sqrt(nd * kPi * kPi / 3.0)};
  }
  throw std::domain_error("loglik_diagnostics: unknown model kind");
}

}  // namespace bpcr

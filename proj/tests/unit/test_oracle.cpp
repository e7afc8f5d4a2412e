#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "bpcr/dp_engine.hpp"
#include "bpcr/hyperparams.hpp"
#include "bpcr/oracle.hpp"
#include "test_support.hpp"

namespace bpcr::oracle {
namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(EnumerateSegmentations, CountsAndShape) {
  for (std::size_t n = 1; n <= kMaxLength; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto all = enumerate_segmentations(n, k);
      ASSERT_EQ(all.size(), choose(n - 1, k - 1)) << n << " " << k;
      std::set<std::vector<std::size_t>> distinct;
      for (const auto& s : all) {
        ASSERT_EQ(s.k(), k);
        ASSERT_EQ(s.t.front(), 0u);
        ASSERT_EQ(s.t.back(), n);
        for (std::size_t m = 1; m < s.t.size(); ++m) ASSERT_LT(s.t[m - 1], s.t[m]);
        distinct.insert(s.t);
      }
      EXPECT_EQ(distinct.size(), all.size());
    }
  }
  EXPECT_THROW(enumerate_segmentations(0, 1), std::domain_error);
  EXPECT_THROW(enumerate_segmentations(kMaxLength + 1, 1), std::domain_error);
}

TEST(EnumeratePosterior, SinglePoint) {
  const MomentTables mt = gaussian_moments(DataSeries({0.4}), {});
  const EnumeratedPosterior e = enumerate_posterior(mt, 1);
  EXPECT_DOUBLE_EQ(e.log_evidence, mt.log_a0(0, 1));
  EXPECT_EQ(e.ck, std::vector<double>{1.0});
}

TEST(EnumeratePosterior, ThreePointsFourSegmentations) {
  const DataSeries y({0.1, 2.0, -0.7});
  const MomentTables mt = gaussian_moments(y, {0.0, 1.0, 0.5});
  const EnumeratedPosterior e = enumerate_posterior(mt, 3);
  EXPECT_EQ(e.segmentation_count, (std::vector<std::size_t>{1, 2, 1}));
  // Hand sum: prior 1/3 per k, 1/C(2,k-1) per segmentation.
  const double a01 = mt.log_a0(0, 1), a12 = mt.log_a0(1, 2), a23 = mt.log_a0(2, 3);
  const double a02 = mt.log_a0(0, 2), a13 = mt.log_a0(1, 3), a03 = mt.log_a0(0, 3);
  const double total = std::exp(a03) + 0.5 * (std::exp(a01 + a13) + std::exp(a02 + a23)) + std::exp(a01 + a12 + a23);
  EXPECT_NEAR(e.log_evidence, std::log(total / 3.0), 1e-13);
}

TEST(EnumeratePosterior, ReversalKeepsEvidence) {
  std::mt19937_64 rng(41);
  const DataSeries y = testing::random_steps(rng, 9);
  std::vector<double> rev(y.values().rbegin(), y.values().rend());
  const Hyperparameters hp{0.0, 2.0, 1.0};
  const double a = enumerate_posterior(gaussian_moments(y, hp), 9).log_evidence;
  const double b = enumerate_posterior(gaussian_moments(DataSeries(rev), hp), 9).log_evidence;
  EXPECT_NEAR(a, b, 1e-12 * std::abs(a));
}

TEST(EnumeratePosterior, Refusals) {
  const MomentTables big(kMaxLength + 1);
  EXPECT_THROW(enumerate_posterior(big, 1), std::domain_error);
  const MomentTables mt = gaussian_moments(DataSeries({1, 2}), {});
  EXPECT_THROW(enumerate_posterior(mt, 3), std::domain_error);
}

TEST(CompareWithDp, AllKMaxOnRandomInstances) {
  std::mt19937_64 rng(42);
  Deviation worst;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const DataSeries y = testing::random_steps(rng, n);
    const MomentTables mt = gaussian_moments(y, estimate_moments(y));
    for (std::size_t k_max = 1; k_max <= n; ++k_max) worst.merge(compare_with_dp(mt, k_max));
  }
  EXPECT_LE(worst.max(), 1e-9);
}

TEST(CompareWithDp, CauchyGridTables) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const DataSeries y = testing::random_steps(rng, 8);
    const Hyperparameters hp = estimate_quantiles(y, QuartileConstants::cauchy());
    const auto model = LocationScaleModel::cauchy();
    const MomentTables mt = grid_moments(y, hp, model, model, GridSpec::from_hyperparameters(hp));
    EXPECT_LE(compare_with_dp(mt, 8).max(), 1e-9);
  }
}

TEST(RelativeDeviation, Basics) {
  EXPECT_EQ(relative_deviation(1.0, 1.0), 0.0);
  EXPECT_EQ(relative_deviation(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_deviation(1.0, 2.0), 0.5);
  EXPECT_EQ(relative_deviation(NAN, NAN), 0.0);
  EXPECT_TRUE(std::isinf(relative_deviation(1.0, INFINITY)));
}

TEST(RunCheck, DefaultPassesAndTrivialCase) {
  const CheckReport report = run_check(10, 200, 1);
  EXPECT_EQ(report.instances, 200u);
  EXPECT_LE(report.worst.max(), 1e-9);
  const CheckReport one = run_check(1, 20, 3);
  EXPECT_EQ(one.worst.max(), 0.0);
}

}  // namespace
}  // namespace bpcr::oracle

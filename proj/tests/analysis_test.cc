// Copyright 2026 The pcsketch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pcsketch/analysis.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "pcsketch/error.h"

namespace pcsketch {
namespace {

SparseVector zipf(std::uint64_t d, double scale = 1000.0) {
  std::vector<double> v(d);
  for (std::uint64_t i = 0; i < d; ++i) v[i] = scale / static_cast<double>(i + 1);
  return SparseVector::from_dense(v);
}

TEST(TailNormTest, SmallExample) {
  const auto x = SparseVector::from_dense(std::vector<double>{5, 3, 1, 1});
  EXPECT_DOUBLE_EQ(tail_norm(x, 2), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(tail_norm(x, 0), 6.0);
  EXPECT_EQ(tail_norm(x, 4), 0.0);
  EXPECT_EQ(tail_norm(x, 100), 0.0);
}

TEST(TailNormTest, TiesAndSignsMatchOracle) {
  const std::vector<double> dense = {-2, 2, 1, -1, 2, 0, 3};
  const auto x = SparseVector::from_dense(dense);
  for (std::uint64_t m = 0; m <= 7; ++m) {
    EXPECT_NEAR(tail_norm(x, m), oracle::tail_norm(dense, m), 1e-12) << m;
  }
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = oracle::random_dense(30, rng);
    const auto sv = SparseVector::from_dense(v);
    for (std::uint64_t m : {0u, 1u, 5u, 15u, 29u, 30u}) {
      ASSERT_NEAR(tail_norm(sv, m), oracle::tail_norm(v, m), 1e-9);
    }
  }
}

TEST(DeltaScaleTest, BothForms) {
  const auto x = SparseVector::from_dense(std::vector<double>{5, 3, 1, 1});
  EXPECT_DOUBLE_EQ(delta_scale(x, 2, DeltaForm::kTailB), std::sqrt(2.0) / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(delta_scale(x, 2, DeltaForm::kTailHalfB),
                   std::sqrt(11.0) / std::sqrt(2.0));
  EXPECT_EQ(delta_scale(x, 8, DeltaForm::kTailB), 0.0);
  EXPECT_THROW(delta_scale(x, 3, DeltaForm::kTailB), Error);
}

TEST(ErrorReportTest, SmallExample) {
  const std::vector<double> est = {1.0, 2.5, -1.0, 4.0};
  const std::vector<double> truth = {1.0, 2.0, 0.0, 1.0};
  const std::vector<double> thresholds = {0.0, 0.5, 1.0, 3.0};
  const ErrorReport r = error_report(est, truth, thresholds);
  EXPECT_EQ(r.errors, (std::vector<double>{0.0, 0.5, 1.0, 3.0}));
  ASSERT_EQ(r.cdf.size(), 4u);
  EXPECT_EQ(r.cdf[0].cum_prob, 0.25);
  EXPECT_EQ(r.cdf[1].cum_prob, 0.5);
  EXPECT_EQ(r.cdf[2].cum_prob, 0.75);
  EXPECT_EQ(r.cdf[3].cum_prob, 1.0);
  EXPECT_EQ(r.summary.median, 0.5);
  EXPECT_EQ(r.summary.q90, 3.0);
  EXPECT_EQ(r.summary.max, 3.0);
}

TEST(ErrorReportTest, RejectsBadInput) {
  const std::vector<double> a = {1.0}, b = {1.0, 2.0}, th = {1.0, 0.0};
  EXPECT_THROW(error_report(a, b, {}), Error);
  EXPECT_THROW(error_report_from_errors({}, {}), Error);
  EXPECT_THROW(error_report_from_errors({1.0}, th), Error);
}

TEST(ErrorReportTest, QuantilesMatchOracle) {
  std::mt19937_64 rng(9);
  std::exponential_distribution<double> ex(0.3);
  for (std::size_t n : {1u, 2u, 7u, 100u, 1001u}) {
    std::vector<double> err(n);
    for (auto& e : err) e = ex(rng);
    const auto r = error_report_from_errors(err, {});
    EXPECT_EQ(r.summary.median, oracle::quantile(err, 0.5));
    EXPECT_EQ(r.summary.q90, oracle::quantile(err, 0.9));
    EXPECT_EQ(r.summary.q95, oracle::quantile(err, 0.95));
    EXPECT_EQ(r.summary.q99, oracle::quantile(err, 0.99));
  }
}

TEST(LinearThresholdsTest, Grid) {
  EXPECT_EQ(linear_thresholds(2.0, 5), (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
}

TEST(CsvTest, RoundTripIsExact) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<double> err(500);
  for (auto& e : err) e = std::fabs(n(rng));
  auto report = error_report_from_errors(err, linear_thresholds(12.345678901234567, 51));
  report.metadata = {{"k", "9"}, {"sigma", "0.1"}};
  std::stringstream out;
  write_report_csv(out, "pcs_k9", report);
  write_report_csv(out, "other", report);
  const auto series = read_cdf_csv(out);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].name, "pcs_k9");
  EXPECT_EQ(series[1].name, "other");
  EXPECT_EQ(series[0].points, report.cdf);
  bool found_k = false;
  for (const auto& [key, value] : series[0].comments) {
    if (key == "k") found_k = value == "9";
    if (key == "q90_abs_err") EXPECT_EQ(std::stod(value), report.summary.q90);
  }
  EXPECT_TRUE(found_k);
}

TEST(CsvTest, RejectsDecreasingCdf) {
  std::stringstream in("# series=x\nthreshold,cum_prob\n0,0.5\n1,0.25\n");
  EXPECT_THROW(read_cdf_csv(in), Error);
  std::stringstream junk("threshold,cum_prob\n0,abc\n");
  EXPECT_THROW(read_cdf_csv(junk), Error);
}

TEST(FailureRateTest, ZeroVectorNeverFails) {
  FailureRateConfig cfg;
  cfg.x = SparseVector(50);
  cfg.k = 5;
  cfg.b = 8;
  cfg.indices = {0, 10, 49};
  cfg.alpha = 0.0;
  const auto r = empirical_failure_rate(cfg, 200);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(r.queries, 600u);
}

TEST(FailureRateTest, MoreRowsFailLess) {
  FailureRateConfig cfg;
  cfg.x = zipf(500);
  cfg.b = 32;
  cfg.alpha = 0.5;
  cfg.scale = ErrorScale::kDelta;
  cfg.indices = {0, 3, 40, 250};
  cfg.master_seed = 17;
  cfg.k = 9;
  const double r9 = empirical_failure_rate(cfg, 2000).rate();
  cfg.k = 27;
  const double r27 = empirical_failure_rate(cfg, 2000).rate();
  EXPECT_LT(r27, r9);
}

TEST(FailureRateTest, WorkerCountDoesNotChangeResult) {
  FailureRateConfig cfg;
  cfg.x = zipf(300);
  cfg.k = 5;
  cfg.b = 16;
  cfg.alpha = 0.3;
  cfg.noise = NoiseSpec::gaussian(0.5);
  cfg.indices = {1, 2, 100};
  cfg.workers = 1;
  const auto one = empirical_failure_rate(cfg, 300);
  cfg.workers = 4;
  const auto four = empirical_failure_rate(cfg, 300);
  EXPECT_EQ(one.failures, four.failures);
  EXPECT_EQ(one.threshold, four.threshold);
}

TEST(MedianBoundTest, KnownValues) {
  EXPECT_NEAR(symmetric_median_bound(1.0, 2), 0.7357588823428847, 1e-15);
  EXPECT_NEAR(symmetric_median_bound(0.5, 1), 2.0 * std::exp(-0.125), 1e-15);
  EXPECT_NEAR(symmetric_median_bound(1.0, 100), 3.8574996959278356e-22, 1e-35);
  EXPECT_THROW(symmetric_median_bound(0.0, 3), Error);
  EXPECT_THROW(symmetric_median_bound(0.5, 0), Error);
}

// A row estimator lands within alpha * Delta with probability at least
// p * alpha for some constant p, and the median of k rows then fails with
// probability at most 2 exp(-(p alpha)^2 k / 2).
TEST(CoverageProperty, MedianFailureRespectsMeasuredConstant) {
  const SparseVector x = zipf(400);
  const std::uint32_t b = 32;
  const double delta = delta_scale(x, b, DeltaForm::kTailHalfB);
  const std::vector<double> alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const auto errors = sample_row_errors(x, 7, b, 0.0, 20000, 5);
  const auto profile = coverage_profile(errors, delta, alphas);
  EXPECT_GT(profile.constant, 0.2);

  FailureRateConfig cfg;
  cfg.x = x;
  cfg.b = b;
  cfg.k = 15;
  cfg.alpha = 0.5;
  cfg.scale = ErrorScale::kDelta;
  cfg.indices = {7};
  cfg.master_seed = 6;
  const double rate = empirical_failure_rate(cfg, 2000).rate();
  EXPECT_LT(rate, symmetric_median_bound(profile.constant * cfg.alpha, cfg.k));
}

TEST(CoverageProfileTest, HandComputed) {
  const std::vector<double> err = {-0.5, 0.2, 1.5, -3.0};
  const std::vector<double> alphas = {0.5, 1.0};
  const auto p = coverage_profile(err, 1.0, alphas);
  EXPECT_EQ(p.points[0].second, 0.5);
  EXPECT_EQ(p.points[1].second, 0.5);
  EXPECT_EQ(p.constant, 0.5);
}

TEST(RowErrorsTest, NoisyRowsAreUnbiased) {
  const SparseVector x = zipf(100, 10.0);
  const auto errors = sample_row_errors(x, 3, 8, 2.0, 40000, 1);
  ASSERT_EQ(errors.size(), 40000u);
  double s = 0.0, sq = 0.0;
  for (double e : errors) {
    s += e;
    sq += e * e;
  }
  const double n = errors.size();
  const double m = s / n;
  EXPECT_LT(std::fabs(m), 5.0 * std::sqrt((sq / n - m * m) / n));
}

TEST(StatHelpersTest, SignTestAndKsAndCorrelation) {
  EXPECT_EQ(sign_test_p_value(std::vector<double>{}), 1.0);
  EXPECT_NEAR(sign_test_p_value(std::vector<double>{1, 1, 1, 1, 1}), 0.0625, 1e-12);
  EXPECT_EQ(ks_statistic({0.5}, [](double v) { return v; }), 0.5);
  const std::vector<double> a = {1, 2, 3}, b = {2, 4, 6}, c = {3, 2, 1};
  EXPECT_NEAR(correlation(a, b), 1.0, 1e-12);
  EXPECT_NEAR(correlation(a, c), -1.0, 1e-12);
}

}  // namespace
}  // namespace pcsketch

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

#ifndef PCSKETCH_ANALYSIS_H_
#define PCSKETCH_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcsketch/hashing.h"
#include "pcsketch/noise.h"
#include "pcsketch/sketch.h"
#include "pcsketch/sparse_vector.h"

namespace pcsketch {

// L2 norm of x after zeroing its m largest-magnitude entries. Among equal
// magnitudes the smaller index counts as larger, so the larger index stays in
// the tail.
double tail_norm(const SparseVector& x, std::uint64_t m);

enum class DeltaForm {
  kTailB,      // ||tail_b(x)||_2 / sqrt(b)
  kTailHalfB,  // ||tail_{b/2}(x)||_2 / sqrt(b)
};

double delta_scale(const SparseVector& x, std::uint32_t b, DeltaForm form);

struct CdfPoint {
  double threshold;
  double cum_prob;  // fraction of absolute errors <= threshold

  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

struct ErrorSummary {
  double median = 0.0;
  double q90 = 0.0;
  double q95 = 0.0;
  double q99 = 0.0;
  double max = 0.0;
};

struct ErrorReport {
  std::vector<double> errors;  // |estimate - truth|, query order
  std::vector<CdfPoint> cdf;
  ErrorSummary summary;
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Nearest-rank quantile: the element of rank ceil(q * n) in sorted order
// (rank 1 for q = 0). `sorted` must be ascending and nonempty.
double order_statistic(std::span<const double> sorted, double q);

ErrorReport error_report(std::span<const double> estimates,
                         std::span<const double> truth,
                         std::span<const double> thresholds);
// From precomputed absolute errors.
ErrorReport error_report_from_errors(std::vector<double> abs_errors,
                                     std::span<const double> thresholds);

// `points` evenly spaced thresholds from 0 to max_value inclusive.
std::vector<double> linear_thresholds(double max_value, std::size_t points);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// One CDF section: "# series=<name>", summary and metadata as "# key=value"
// comment lines, then "threshold,cum_prob" and one row per CDF point.
void write_report_csv(std::ostream& out, const std::string& series,
                      const ErrorReport& report);

struct CdfSeries {
  std::string name;
  std::vector<std::pair<std::string, std::string>> comments;
  std::vector<CdfPoint> points;
};

// Parses files written by write_report_csv (any number of sections, plus
// leading "# key=value" lines before the first series). Throws
// pcsketch::Error if a section is not a valid CDF: thresholds and
// probabilities must be non-decreasing and probabilities in [0, 1].
std::vector<CdfSeries> read_cdf_csv(std::istream& in);

enum class ErrorScale {
  kDelta,
  kSigma,
  kMax,  // max(Delta, sigma)
};

struct FailureRateConfig {
  SparseVector x;
  std::uint32_t k = 1;
  std::uint32_t b = 2;
  std::uint64_t master_seed = 0;
  NoiseSpec noise;
  std::vector<std::uint64_t> indices;
  double alpha = 1.0;
  ErrorScale scale = ErrorScale::kMax;
  DeltaForm delta_form = DeltaForm::kTailHalfB;
  unsigned workers = 1;
};

struct FailureRate {
  std::uint64_t failures = 0;
  std::uint64_t queries = 0;
  double threshold = 0.0;  // alpha * chosen scale

  double rate() const {
    return queries == 0 ? 0.0 : static_cast<double>(failures) / queries;
  }
};

// Fraction of (trial, index) queries with |median estimate - x_index| >
// alpha * scale. Every trial draws a fresh hash family and fresh noise from
// seeds derived from (master_seed, trial), so the result does not depend on
// the worker count.
FailureRate empirical_failure_rate(const FailureRateConfig& config,
                                   std::size_t trials);

// 2 exp(-p^2 k / 2): ceiling on Pr[|median of k symmetric C_i| > gamma] when
// each Pr[|C_i| <= gamma] >= p.
double symmetric_median_bound(double p, std::uint32_t k);

// Independent draws of a single row's estimation error for x[index] with
// table size b, plus N(0, sigma^2) noise when sigma > 0. Each sample uses a
// fresh row of a fully random hash family.
std::vector<double> sample_row_errors(const SparseVector& x,
                                      std::uint64_t index, std::uint32_t b,
                                      double sigma, std::size_t samples,
                                      std::uint64_t seed);

struct CoverageProfile {
  std::vector<std::pair<double, double>> points;  // (alpha, Pr[|e| <= alpha*scale])
  double constant = 0.0;  // min over alpha of Pr / alpha
};

// Measures the linear-coverage constant c with Pr[|e| <= alpha * scale] >=
// c * alpha over the given alpha grid.
CoverageProfile coverage_profile(std::span<const double> errors, double scale,
                                 std::span<const double> alphas);

// Two-sided exact sign test of symmetry about `center`; ties are dropped.
double sign_test_p_value(std::span<const double> values, double center = 0.0);

// sup_t |F_n(t) - cdf(t)| for the empirical distribution of `sample`.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

// Pearson correlation of two equal-length sequences.
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace pcsketch

#endif  // PCSKETCH_ANALYSIS_H_

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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pcsketch/error.h"
#include "pcsketch/parallel.h"
#include "pcsketch/privacy.h"
#include "pcsketch/random.h"

namespace pcsketch {

double tail_norm(const SparseVector& x, std::uint64_t m) {
  const auto entries = x.entries();
  if (m >= entries.size()) return 0.0;
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::fabs(entries[a].value) >
                            std::fabs(entries[b].value);
                   });
  std::vector<bool> removed(entries.size(), false);
  for (std::uint64_t i = 0; i < m; ++i) removed[order[i]] = true;
  double sum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!removed[i]) sum += entries[i].value * entries[i].value;
  }
  return std::sqrt(sum);
}

double delta_scale(const SparseVector& x, std::uint32_t b, DeltaForm form) {
  if (b == 0 || b % 2 != 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "table size b must be a positive even integer");
  }
  const std::uint64_t m = form == DeltaForm::kTailB ? b : b / 2;
  return tail_norm(x, m) / std::sqrt(static_cast<double>(b));
}

double order_statistic(std::span<const double> sorted, double q) {
  if (sorted.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "quantile of empty sequence");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "quantile must lie in [0, 1]");
  }
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

ErrorReport error_report(std::span<const double> estimates,
                         std::span<const double> truth,
                         std::span<const double> thresholds) {
  if (estimates.size() != truth.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "estimates and truth differ in length");
  }
  std::vector<double> errors(estimates.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    errors[i] = std::fabs(estimates[i] - truth[i]);
  }
  return error_report_from_errors(std::move(errors), thresholds);
}

ErrorReport error_report_from_errors(std::vector<double> abs_errors,
                                     std::span<const double> thresholds) {
  if (abs_errors.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "error report needs data");
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error(ErrorCode::kInvalidParameter,
                "thresholds must be non-decreasing");
  }
  ErrorReport report;
  report.errors = std::move(abs_errors);
  std::vector<double> sorted = report.errors;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  report.cdf.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), t) -
                       sorted.begin();
    report.cdf.push_back({t, static_cast<double>(below) / n});
  }
  report.summary.median = order_statistic(sorted, 0.5);
  report.summary.q90 = order_statistic(sorted, 0.9);
  report.summary.q95 = order_statistic(sorted, 0.95);
  report.summary.q99 = order_statistic(sorted, 0.99);
  report.summary.max = sorted.back();
  return report;
}

std::vector<double> linear_thresholds(double max_value, std::size_t points) {
  if (points < 2) return {0.0, max_value};
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = max_value * static_cast<double>(i) /
             static_cast<double>(points - 1);
  }
  out.back() = max_value;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_report_csv(std::ostream& out, const std::string& series,
                      const ErrorReport& report) {
  out << "# series=" << series << '\n';
  out << "# count=" << report.errors.size() << '\n';
  out << "# median_abs_err=" << format_double(report.summary.median) << '\n';
  out << "# q90_abs_err=" << format_double(report.summary.q90) << '\n';
  out << "# q95_abs_err=" << format_double(report.summary.q95) << '\n';
  out << "# q99_abs_err=" << format_double(report.summary.q99) << '\n';
  out << "# max_abs_err=" << format_double(report.summary.max) << '\n';
  for (const auto& [key, value] : report.metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  out << "threshold,cum_prob\n";
  for (const auto& p : report.cdf) {
    out << format_double(p.threshold) << ',' << format_double(p.cum_prob)
        << '\n';
  }
}

namespace {

double parse_double(std::string_view text, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                       ": bad number \"" + std::string(text) +
                                       "\"");
  }
  return v;
}

void check_cdf(const CdfSeries& s) {
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    if (!(p.cum_prob >= 0.0 && p.cum_prob <= 1.0)) {
      throw Error(ErrorCode::kFormat,
                  "series " + s.name + ": probability outside [0, 1]");
    }
    if (i > 0 && (p.threshold < s.points[i - 1].threshold ||
                  p.cum_prob < s.points[i - 1].cum_prob)) {
      throw Error(ErrorCode::kFormat,
                  "series " + s.name + ": CDF is not non-decreasing");
    }
  }
}

}  // namespace

std::vector<CdfSeries> read_cdf_csv(std::istream& in) {
  std::vector<CdfSeries> out;
  std::string line;
  std::size_t line_no = 0;
  bool in_rows = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const std::string body = line.substr(2);
      const auto eq = body.find('=');
      std::string key = body.substr(0, eq);
      std::string value = eq == std::string::npos ? "" : body.substr(eq + 1);
      if (key == "series") {
        out.push_back(CdfSeries{value, {}, {}});
        in_rows = false;
      } else if (!out.empty() && !in_rows) {
        out.back().comments.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    if (line == "threshold,cum_prob") {
      if (out.empty()) out.push_back(CdfSeries{"", {}, {}});
      in_rows = true;
      continue;
    }
    if (!in_rows) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": data before header");
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected two fields");
    }
    std::string_view view(line);
    out.back().points.push_back({parse_double(view.substr(0, comma), line_no),
                                 parse_double(view.substr(comma + 1), line_no)});
  }
  for (const auto& s : out) check_cdf(s);
  return out;
}

FailureRate empirical_failure_rate(const FailureRateConfig& config,
                                   std::size_t trials) {
  if (trials == 0) {
    throw Error(ErrorCode::kInvalidParameter, "trials must be >= 1");
  }
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "alpha must lie in [0, 1]");
  }
  config.noise.validate();
  SketchParams params{config.x.dimension(), config.k, config.b, 0};
  params.validate();
  for (std::uint64_t index : config.indices) {
    if (index >= params.d) {
      throw Error(ErrorCode::kIndexOutOfRange, "query index out of range");
    }
  }

  const double delta = delta_scale(config.x, config.b, config.delta_form);
  const double sigma = std::sqrt(config.noise.variance());
  double scale = 0.0;
  switch (config.scale) {
    case ErrorScale::kDelta:
      scale = delta;
      break;
    case ErrorScale::kSigma:
      scale = sigma;
      break;
    case ErrorScale::kMax:
      scale = std::max(delta, sigma);
      break;
  }
  const double threshold = config.alpha * scale;

  std::vector<double> truth;
  truth.reserve(config.indices.size());
  for (std::uint64_t index : config.indices) {
    truth.push_back(config.x.value_at(index));
  }

  std::vector<std::uint64_t> failures(trials, 0);
  for_each_trial(trials, config.workers, [&](std::size_t trial) {
    SketchParams p = params;
    p.seed = derive_seed(config.master_seed, trial, 0);
    Sketch sketch = sketch_vector(config.x, HashFamily::make_shared(p));
    if (config.noise.kind != NoiseKind::kNone) {
      NoiseSource source(derive_seed(config.master_seed, trial, 1));
      sketch = privatize(std::move(sketch), config.noise, source);
    }
    std::uint64_t count = 0;
    for (std::size_t q = 0; q < config.indices.size(); ++q) {
      const double err =
          std::fabs(estimate_median(sketch, config.indices[q]) - truth[q]);
      if (err > threshold) ++count;
    }
    failures[trial] = count;
  });

  FailureRate result;
  result.failures = std::accumulate(failures.begin(), failures.end(),
                                    std::uint64_t{0});
  result.queries = trials * config.indices.size();
  result.threshold = threshold;
  return result;
}

double symmetric_median_bound(double p, std::uint32_t k) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "p must lie in (0, 1]");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidParameter, "k must be >= 1");
  return 2.0 * std::exp(-p * p * static_cast<double>(k) / 2.0);
}

std::vector<double> sample_row_errors(const SparseVector& x,
                                      std::uint64_t index, std::uint32_t b,
                                      double sigma, std::size_t samples,
                                      std::uint64_t seed) {
  if (index >= x.dimension()) {
    throw Error(ErrorCode::kIndexOutOfRange, "query index out of range");
  }
  if (!(sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "sigma must be nonnegative");
  }
  constexpr std::uint32_t kRowsPerChunk = 1001;
  const double truth = x.value_at(index);
  std::vector<double> out;
  out.reserve(samples);
  for (std::uint64_t chunk = 0; out.size() < samples; ++chunk) {
    const std::size_t need = samples - out.size();
    std::uint32_t rows = static_cast<std::uint32_t>(
        std::min<std::size_t>(kRowsPerChunk, need));
    if (rows % 2 == 0) ++rows;
    const HashFamily family =
        HashFamily::build({x.dimension(), rows, b, derive_seed(seed, chunk, 0)});
    NoiseSource noise(derive_seed(seed, chunk, 1));
    for (std::uint32_t i = 0; i < rows && out.size() < samples; ++i) {
      const std::uint32_t target = family.bucket(i, index);
      double cell = 0.0;
      for (const auto& e : x.entries()) {
        if (family.bucket(i, e.index) == target) {
          cell += family.sign(i, e.index) * e.value;
        }
      }
      double err = family.sign(i, index) * cell - truth;
      if (sigma > 0.0) err += noise.gaussian(sigma);
      out.push_back(err);
    }
  }
  return out;
}

CoverageProfile coverage_profile(std::span<const double> errors, double scale,
                                 std::span<const double> alphas) {
  if (errors.empty() || alphas.empty()) {
    throw Error(ErrorCode::kInvalidParameter,
                "coverage needs errors and an alpha grid");
  }
  std::vector<double> sorted(errors.size());
  std::transform(errors.begin(), errors.end(), sorted.begin(),
                 [](double e) { return std::fabs(e); });
  std::sort(sorted.begin(), sorted.end());
  CoverageProfile profile;
  profile.constant = std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) {
      throw Error(ErrorCode::kInvalidParameter, "alpha must be positive");
    }
    const auto inside =
        std::upper_bound(sorted.begin(), sorted.end(), alpha * scale) -
        sorted.begin();
    const double prob =
        static_cast<double>(inside) / static_cast<double>(sorted.size());
    profile.points.emplace_back(alpha, prob);
    profile.constant = std::min(profile.constant, prob / alpha);
  }
  return profile;
}

double sign_test_p_value(std::span<const double> values, double center) {
  std::uint64_t above = 0, below = 0;
  for (double v : values) {
    if (v > center) ++above;
    if (v < center) ++below;
  }
  const std::uint64_t n = above + below;
  if (n == 0) return 1.0;
  const std::uint64_t s = std::min(above, below);
  // Pr[X <= s] for X ~ Binomial(n, 1/2), summed in log space.
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  double tail = 0.0;
  for (std::uint64_t i = 0; i <= s; ++i) {
    const double log_term = log_n_fact -
                            std::lgamma(static_cast<double>(i) + 1.0) -
                            std::lgamma(static_cast<double>(n - i) + 1.0) +
                            log_half_n;
    tail += std::exp(log_term);
  }
  return std::min(1.0, 2.0 * tail);
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "KS statistic of empty sample");
  }
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                "correlation needs two equal-length sequences");
  }
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace pcsketch

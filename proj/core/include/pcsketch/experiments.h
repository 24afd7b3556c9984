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

#ifndef PCSKETCH_EXPERIMENTS_H_
#define PCSKETCH_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcsketch/analysis.h"
#include "pcsketch/datasets.h"
#include "pcsketch/privacy.h"

namespace pcsketch {

// Error-distribution experiments. Every experiment returns one ErrorReport
// per series; all randomness is derived from the master seed and the trial
// index, so identical inputs give byte-identical CSV output regardless of the
// worker count.

struct Series {
  std::string name;
  ErrorReport report;
  std::vector<double> signed_errors;  // estimate - truth, same order
};

struct ExperimentResult {
  std::string id;
  std::vector<std::pair<std::string, std::string>> config;  // echoed in CSV
  std::vector<std::string> notes;  // parameter adjustments, fallbacks
  std::vector<Series> series;

  const Series& find(const std::string& name) const;
};

// Commented header (experiment id, config echo, notes) followed by one
// write_report_csv section per series.
void write_experiment_csv(std::ostream& out, const ExperimentResult& result);

inline constexpr std::size_t kCdfPoints = 201;

// Median of k draws from N(0, k), per k. Series "k<k>".
ExperimentResult run_median_normals(const std::vector<std::uint32_t>& ks,
                                    std::size_t trials, std::uint64_t seed,
                                    unsigned workers = 1);

// Private CountSketch whose per-row estimators are exact (a single-item
// vector), noise sigma^2 = k. Series "k<k>" plus "gaussian" (|N(0,1)| draws).
ExperimentResult run_zero_variance(const std::vector<std::uint32_t>& ks,
                                   std::size_t trials, std::uint64_t seed,
                                   unsigned workers = 1);

// Noise level of the equivalent direct Gaussian mechanism on the raw vector,
// either given directly or calibrated from (epsilon, delta) at sensitivity 1.
// A k-row sketch gets per-cell noise sqrt(k) times this level.
struct NoiseLevel {
  std::optional<double> sigma;
  std::optional<double> epsilon;
  std::optional<double> delta;

  double direct_sigma() const;
};

struct SparseExperiment {
  std::uint32_t t = 100;
  double value = 10.0;
  std::vector<std::uint32_t> ks = {1, 5, 15, 25};
  std::uint32_t b = 100;
  // Vector dimension; 0 means d = t. With fully random hashing the error
  // distribution does not depend on d, only on the support.
  std::uint64_t d = 0;
  NoiseLevel noise;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

// t-sparse vectors with every nonzero equal to `value`; errors over all
// support queries. Series "k<k>" plus "gaussian_direct".
ExperimentResult run_sparse(const SparseExperiment& config);

struct DatasetExperiment {
  std::vector<std::uint32_t> ks = {1, 5, 15, 25};
  std::optional<std::uint32_t> b;   // fixed table size
  std::optional<std::uint64_t> kb;  // or total cells; b = kb / k, made even
  // Direct per-cell sigma (population data) or (epsilon, delta) with
  // basket-level sensitivity (transaction data).
  std::optional<double> sigma;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::uint64_t seed = 0;
  // Hash seeds tried under collision-free basket sensitivity before falling
  // back to the worst case.
  std::uint32_t max_resamples = 16;
};

// Sketches the dataset vector, privatizes it, and queries every support
// index. Series "cs_k<k>" and "pcs_k<k>" per k plus "gaussian" at the noise
// level of the direct mechanism.
ExperimentResult run_dataset(const Dataset& dataset,
                             const DatasetExperiment& config);

struct BasketNoise {
  double sensitivity = 0.0;
  double sigma = 0.0;
  GroupMode mode = GroupMode::kWorstCase;
  std::uint64_t hash_seed = 0;
  std::uint32_t attempts = 0;  // collision-free seeds tried
};

// Collision-free sensitivity for the dataset's largest basket, resampling
// the hash seed up to max_resamples times, else worst-case.
BasketNoise basket_noise(const Dataset& dataset, SketchParams params,
                         double epsilon, double delta,
                         std::uint32_t max_resamples);

// b = kb / k rounded down to even; `adjusted` reports whether rounding
// changed it.
std::uint32_t table_size_for(std::uint64_t kb, std::uint32_t k,
                             bool* adjusted = nullptr);

enum class ExperimentId {
  kMedianNormals,
  kZeroVariance,
  kSparse,
  kCities,
  kBaskets,
};

std::optional<ExperimentId> parse_experiment_id(const std::string& name);
std::string experiment_name(ExperimentId id);

// Everything the CLI's `experiment` subcommand accepts.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::kMedianNormals;
  std::vector<std::uint32_t> ks = {1, 5, 15, 25};
  std::optional<std::uint32_t> b;
  std::optional<std::uint64_t> kb;
  std::optional<double> sigma;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> dataset_path;
  std::uint32_t t = 100;
  double value = 10.0;
  std::uint64_t d = 0;
  std::size_t max_basket = 100;
  unsigned workers = 1;

  // Throws pcsketch::Error when id-specific fields are missing or invalid.
  void validate() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace pcsketch

#endif  // PCSKETCH_EXPERIMENTS_H_

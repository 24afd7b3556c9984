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

#include "pcsketch/experiments.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "pcsketch/error.h"
#include "pcsketch/parallel.h"
#include "pcsketch/random.h"

namespace pcsketch {
namespace {

constexpr std::uint64_t kReferenceStream = 0x5eed0000;

void require_odd(const std::vector<std::uint32_t>& ks) {
  if (ks.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "need at least one k");
  }
  for (std::uint32_t k : ks) {
    if (k == 0 || k % 2 == 0) {
      throw Error(ErrorCode::kInvalidParameter,
                  "k must be a positive odd integer, got " + std::to_string(k));
    }
  }
}

std::string join(const std::vector<std::uint32_t>& ks) {
  std::string out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ks[i]);
  }
  return out;
}

Series make_series(std::string name, std::vector<double> signed_errors) {
  Series s;
  s.name = std::move(name);
  s.signed_errors = std::move(signed_errors);
  return s;
}

// Builds every report on one shared threshold grid.
void finalize(ExperimentResult& result,
              std::vector<std::vector<std::pair<std::string, std::string>>>
                  metadata = {}) {
  double max_err = 0.0;
  for (const auto& s : result.series) {
    for (double e : s.signed_errors) max_err = std::max(max_err, std::fabs(e));
  }
  const auto thresholds = linear_thresholds(max_err, kCdfPoints);
  for (std::size_t i = 0; i < result.series.size(); ++i) {
    auto& s = result.series[i];
    std::vector<double> abs_errors(s.signed_errors.size());
    std::transform(s.signed_errors.begin(), s.signed_errors.end(),
                   abs_errors.begin(), [](double e) { return std::fabs(e); });
    s.report = error_report_from_errors(std::move(abs_errors), thresholds);
    if (i < metadata.size()) s.report.metadata = std::move(metadata[i]);
  }
}

double median_of(std::vector<double>& values) {
  const auto mid = values.begin() + values.size() / 2;
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

std::vector<double> gaussian_draws(double sigma, std::size_t n,
                                   std::uint64_t seed) {
  std::vector<double> out(n);
  NoiseSource source(seed);
  for (double& v : out) v = source.gaussian(sigma);
  return out;
}

}  // namespace

const Series& ExperimentResult::find(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::kInvalidParameter, "no series named " + name);
}

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  out << "# experiment=" << result.id << '\n';
  for (const auto& [key, value] : result.config) {
    out << "# " << key << '=' << value << '\n';
  }
  for (const auto& note : result.notes) out << "# note=" << note << '\n';
  for (const auto& s : result.series) write_report_csv(out, s.name, s.report);
}

ExperimentResult run_median_normals(const std::vector<std::uint32_t>& ks,
                                    std::size_t trials, std::uint64_t seed,
                                    unsigned workers) {
  require_odd(ks);
  if (trials == 0) throw Error(ErrorCode::kInvalidParameter, "trials >= 1");
  ExperimentResult result;
  result.id = "median_normals";
  result.config = {{"k", join(ks)},
                   {"trials", std::to_string(trials)},
                   {"seed", std::to_string(seed)}};
  for (std::uint32_t k : ks) {
    const double sd = std::sqrt(static_cast<double>(k));
    std::vector<double> medians(trials);
    for_each_trial(trials, workers, [&](std::size_t trial) {
      NoiseSource source(derive_seed(seed, k, trial));
      std::vector<double> draws(k);
      for (double& v : draws) v = source.gaussian(sd);
      medians[trial] = median_of(draws);
    });
    result.series.push_back(make_series("k" + std::to_string(k),
                                        std::move(medians)));
  }
  finalize(result);
  return result;
}

ExperimentResult run_zero_variance(const std::vector<std::uint32_t>& ks,
                                   std::size_t trials, std::uint64_t seed,
                                   unsigned workers) {
  require_odd(ks);
  if (trials == 0) throw Error(ErrorCode::kInvalidParameter, "trials >= 1");
  ExperimentResult result;
  result.id = "zero_variance";
  result.config = {{"k", join(ks)},
                   {"trials", std::to_string(trials)},
                   {"seed", std::to_string(seed)},
                   {"noise", "sigma^2=k (rho=1/2)"}};
  const SparseVector x = SparseVector::from_entries(1, {{0, 1.0}});
  std::vector<std::vector<std::pair<std::string, std::string>>> metadata;
  for (std::uint32_t k : ks) {
    const double sigma = std::sqrt(static_cast<double>(k));
    std::vector<double> errors(trials);
    for_each_trial(trials, workers, [&](std::size_t trial) {
      const std::uint64_t trial_seed = derive_seed(seed, k, trial);
      auto family =
          HashFamily::make_shared({1, k, 2, derive_seed(trial_seed, 0)});
      NoiseSource source(derive_seed(trial_seed, 1));
      Sketch sketch = privatize(sketch_vector(x, std::move(family)),
                                NoiseSpec::gaussian(sigma), source);
      errors[trial] = estimate_median(sketch, 0) - 1.0;
    });
    result.series.push_back(make_series("k" + std::to_string(k),
                                        std::move(errors)));
    metadata.push_back({{"k", std::to_string(k)},
                        {"sigma", format_double(sigma)},
                        {"rho", format_double(zcdp_of(sigma, k))}});
  }
  result.series.push_back(make_series(
      "gaussian", gaussian_draws(1.0, trials, derive_seed(seed, kReferenceStream))));
  metadata.push_back({{"sigma", "1"}});
  finalize(result, std::move(metadata));
  return result;
}

double NoiseLevel::direct_sigma() const {
  if (sigma) {
    if (!(*sigma >= 0.0) || !std::isfinite(*sigma)) {
      throw Error(ErrorCode::kInvalidParameter, "sigma must be >= 0");
    }
    return *sigma;
  }
  if (epsilon && delta) return calibrate_gaussian(*epsilon, *delta, 1);
  throw Error(ErrorCode::kInvalidParameter,
              "need --sigma or both --eps and --delta");
}

ExperimentResult run_sparse(const SparseExperiment& config) {
  require_odd(config.ks);
  if (config.t == 0) throw Error(ErrorCode::kInvalidParameter, "t >= 1");
  if (config.trials == 0) {
    throw Error(ErrorCode::kInvalidParameter, "trials >= 1");
  }
  const std::uint64_t d = config.d == 0 ? config.t : config.d;
  if (d < config.t) {
    throw Error(ErrorCode::kInvalidParameter, "dimension d must be >= t");
  }
  const double direct = config.noise.direct_sigma();
  const std::uint32_t t = config.t;

  ExperimentResult result;
  result.id = "sparse";
  result.config = {{"t", std::to_string(t)},
                   {"value", format_double(config.value)},
                   {"k", join(config.ks)},
                   {"b", std::to_string(config.b)},
                   {"d", std::to_string(d)},
                   {"direct_sigma", format_double(direct)},
                   {"trials", std::to_string(config.trials)},
                   {"seed", std::to_string(config.seed)}};
  if (config.noise.epsilon) {
    result.config.emplace_back("eps", format_double(*config.noise.epsilon));
  }
  if (config.noise.delta) {
    result.config.emplace_back("delta", format_double(*config.noise.delta));
  }

  std::vector<std::vector<std::pair<std::string, std::string>>> metadata;
  for (std::uint32_t k : config.ks) {
    SketchParams base{d, k, config.b, 0};
    base.validate();
    const double sigma = direct * std::sqrt(static_cast<double>(k));
    std::vector<double> errors(config.trials * t);
    for_each_trial(config.trials, config.workers, [&](std::size_t trial) {
      const std::uint64_t trial_seed = derive_seed(config.seed, k, trial);
      std::vector<SparseEntry> entries;
      entries.reserve(t);
      if (d == t) {
        for (std::uint64_t i = 0; i < d; ++i) entries.push_back({i, config.value});
      } else {
        Engine engine = make_engine(derive_seed(trial_seed, 2));
        std::uniform_int_distribution<std::uint64_t> pick(0, d - 1);
        std::unordered_set<std::uint64_t> chosen;
        while (chosen.size() < t) chosen.insert(pick(engine));
        std::vector<std::uint64_t> sorted(chosen.begin(), chosen.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::uint64_t i : sorted) entries.push_back({i, config.value});
      }
      const SparseVector x = SparseVector::from_entries(d, std::move(entries));
      SketchParams p = base;
      p.seed = derive_seed(trial_seed, 0);
      Sketch sketch = sketch_vector(x, HashFamily::make_shared(p));
      if (sigma > 0.0) {
        NoiseSource source(derive_seed(trial_seed, 1));
        sketch = privatize(std::move(sketch), NoiseSpec::gaussian(sigma), source);
      }
      std::size_t q = trial * t;
      for (const auto& e : x.entries()) {
        errors[q++] = estimate_median(sketch, e.index) - e.value;
      }
    });
    result.series.push_back(make_series("k" + std::to_string(k),
                                        std::move(errors)));
    metadata.push_back({{"k", std::to_string(k)},
                        {"b", std::to_string(config.b)},
                        {"sigma", format_double(sigma)}});
  }
  result.series.push_back(make_series(
      "gaussian_direct",
      gaussian_draws(direct, config.trials * t,
                     derive_seed(config.seed, kReferenceStream))));
  metadata.push_back({{"sigma", format_double(direct)}});
  finalize(result, std::move(metadata));
  return result;
}

std::uint32_t table_size_for(std::uint64_t kb, std::uint32_t k,
                             bool* adjusted) {
  if (k == 0) throw Error(ErrorCode::kInvalidParameter, "k must be >= 1");
  const std::uint64_t raw = kb / k;
  const std::uint64_t even = raw - raw % 2;
  if (even < 2 || even > UINT32_MAX) {
    throw Error(ErrorCode::kInvalidParameter,
                "kb = " + std::to_string(kb) + " leaves no even table size for k = " +
                    std::to_string(k));
  }
  if (adjusted) *adjusted = (even * k != kb);
  return static_cast<std::uint32_t>(even);
}

BasketNoise basket_noise(const Dataset& dataset, SketchParams params,
                         double epsilon, double delta,
                         std::uint32_t max_resamples) {
  if (!dataset.baskets || dataset.baskets->empty()) {
    throw Error(ErrorCode::kInvalidParameter,
                "basket-level privacy needs a dataset with baskets");
  }
  const auto& baskets = *dataset.baskets;
  const auto largest = std::max_element(
      baskets.begin(), baskets.end(),
      [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (largest->empty()) {
    throw Error(ErrorCode::kInvalidParameter, "all baskets are empty");
  }
  const std::span<const std::uint64_t> support(*largest);

  BasketNoise out;
  for (std::uint32_t attempt = 0; attempt <= max_resamples; ++attempt) {
    SketchParams p = params;
    p.seed = attempt == 0 ? params.seed : derive_seed(params.seed, attempt);
    const HashFamily family = HashFamily::build(p);
    ++out.attempts;
    try {
      out.sensitivity =
          group_sensitivity(family, support, GroupMode::kCollisionFree);
      out.mode = GroupMode::kCollisionFree;
      out.hash_seed = p.seed;
      out.sigma = gaussian_sigma_for_sensitivity(out.sensitivity, epsilon, delta);
      return out;
    } catch (const CollisionError&) {
    }
  }
  const HashFamily family = HashFamily::build(params);
  out.sensitivity = group_sensitivity(family, support, GroupMode::kWorstCase);
  out.mode = GroupMode::kWorstCase;
  out.hash_seed = params.seed;
  out.sigma = gaussian_sigma_for_sensitivity(out.sensitivity, epsilon, delta);
  return out;
}

ExperimentResult run_dataset(const Dataset& dataset,
                             const DatasetExperiment& config) {
  require_odd(config.ks);
  const bool basket_level = config.epsilon.has_value();
  if (basket_level && !config.delta) {
    throw Error(ErrorCode::kInvalidParameter, "--eps requires --delta");
  }
  if (!basket_level && !config.sigma) {
    throw Error(ErrorCode::kInvalidParameter,
                "need --sigma or (--eps, --delta)");
  }
  if (basket_level && (!dataset.baskets || dataset.baskets->empty())) {
    throw Error(ErrorCode::kInvalidParameter,
                "basket-level privacy needs a dataset with baskets");
  }
  if (!config.b && !config.kb) {
    throw Error(ErrorCode::kInvalidParameter, "need --b or --kb");
  }
  if (!basket_level && !(*config.sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "sigma must be >= 0");
  }

  ExperimentResult result;
  result.id = basket_level ? "baskets" : "cities";
  result.config = {{"dataset", dataset.name},
                   {"d", std::to_string(dataset.dimension())},
                   {"support", std::to_string(dataset.vector.nnz())},
                   {"k", join(config.ks)},
                   {"seed", std::to_string(config.seed)}};
  if (config.b) result.config.emplace_back("b", std::to_string(*config.b));
  if (config.kb) result.config.emplace_back("kb", std::to_string(*config.kb));
  if (basket_level) {
    result.config.emplace_back("eps", format_double(*config.epsilon));
    result.config.emplace_back("delta", format_double(*config.delta));
    result.config.emplace_back("max_basket",
                               std::to_string(dataset.largest_basket()));
  } else {
    result.config.emplace_back("sigma", format_double(*config.sigma));
  }

  const auto support = dataset.support();
  std::vector<double> truth;
  truth.reserve(support.size());
  for (const auto& e : dataset.vector.entries()) truth.push_back(e.value);

  std::vector<std::vector<std::pair<std::string, std::string>>> metadata;
  for (std::uint32_t k : config.ks) {
    std::uint32_t b = 0;
    if (config.b) {
      b = *config.b;
    } else {
      bool adjusted = false;
      b = table_size_for(*config.kb, k, &adjusted);
      if (adjusted) {
        result.notes.push_back("k=" + std::to_string(k) + ": b=" +
                               std::to_string(b) + " (kb/k rounded down to even)");
      }
    }
    SketchParams params{dataset.dimension(), k, b,
                        derive_seed(config.seed, k, 0)};
    params.validate();

    double sigma = 0.0;
    std::string mode = "direct";
    if (basket_level) {
      const BasketNoise noise =
          basket_noise(dataset, params, *config.epsilon, *config.delta,
                       config.max_resamples);
      params.seed = noise.hash_seed;
      sigma = noise.sigma;
      mode = noise.mode == GroupMode::kCollisionFree ? "collision_free"
                                                     : "worst_case";
      result.notes.push_back(
          "k=" + std::to_string(k) + ": basket sensitivity " + mode + " = " +
          format_double(noise.sensitivity) + " after " +
          std::to_string(noise.attempts) + " collision-free attempt(s)" +
          (noise.mode == GroupMode::kWorstCase ? " (warning: fell back to worst case)"
                                               : ""));
    } else {
      sigma = *config.sigma;
    }

    auto family = HashFamily::make_shared(params);
    const Sketch cs = sketch_vector(dataset.vector, family);
    NoiseSource source(derive_seed(config.seed, k, 1));
    const Sketch pcs = privatize(cs, NoiseSpec::gaussian(sigma), source);

    std::vector<double> cs_err(support.size()), pcs_err(support.size());
    for (std::size_t q = 0; q < support.size(); ++q) {
      cs_err[q] = estimate_median(cs, support[q]) - truth[q];
      pcs_err[q] = estimate_median(pcs, support[q]) - truth[q];
    }
    const std::vector<std::pair<std::string, std::string>> meta = {
        {"k", std::to_string(k)},
        {"b", std::to_string(b)},
        {"sigma", format_double(sigma)},
        {"sensitivity_mode", mode}};
    result.series.push_back(make_series("cs_k" + std::to_string(k), std::move(cs_err)));
    metadata.push_back(meta);
    result.series.push_back(make_series("pcs_k" + std::to_string(k), std::move(pcs_err)));
    metadata.push_back(meta);
  }

  double reference = 0.0;
  if (basket_level) {
    reference = gaussian_sigma_for_sensitivity(
        std::sqrt(static_cast<double>(dataset.largest_basket())),
        *config.epsilon, *config.delta);
  } else {
    reference = *config.sigma;
  }
  result.series.push_back(make_series(
      "gaussian", gaussian_draws(reference, support.size(),
                                 derive_seed(config.seed, kReferenceStream))));
  metadata.push_back({{"sigma", format_double(reference)}});
  finalize(result, std::move(metadata));
  return result;
}

std::optional<ExperimentId> parse_experiment_id(const std::string& name) {
  if (name == "median_normals") return ExperimentId::kMedianNormals;
  if (name == "zero_variance") return ExperimentId::kZeroVariance;
  if (name == "sparse") return ExperimentId::kSparse;
  if (name == "cities") return ExperimentId::kCities;
  if (name == "baskets") return ExperimentId::kBaskets;
  return std::nullopt;
}

std::string experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::kMedianNormals:
      return "median_normals";
    case ExperimentId::kZeroVariance:
      return "zero_variance";
    case ExperimentId::kSparse:
      return "sparse";
    case ExperimentId::kCities:
      return "cities";
    case ExperimentId::kBaskets:
      return "baskets";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  require_odd(ks);
  if (trials && *trials == 0) {
    throw Error(ErrorCode::kInvalidParameter, "--trials must be >= 1");
  }
  switch (id) {
    case ExperimentId::kMedianNormals:
    case ExperimentId::kZeroVariance:
      break;
    case ExperimentId::kSparse:
      if (t == 0) throw Error(ErrorCode::kInvalidParameter, "--t must be >= 1");
      if (!sigma && !(epsilon && delta)) {
        throw Error(ErrorCode::kInvalidParameter,
                    "sparse needs --sigma or --eps and --delta");
      }
      break;
    case ExperimentId::kCities:
    case ExperimentId::kBaskets:
      if (!dataset_path) {
        throw Error(ErrorCode::kInvalidParameter,
                    experiment_name(id) + " needs --dataset-path");
      }
      break;
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  switch (config.id) {
    case ExperimentId::kMedianNormals:
      return run_median_normals(config.ks, config.trials.value_or(100000),
                                config.seed, config.workers);
    case ExperimentId::kZeroVariance:
      return run_zero_variance(config.ks, config.trials.value_or(100000),
                               config.seed, config.workers);
    case ExperimentId::kSparse: {
      SparseExperiment sparse;
      sparse.t = config.t;
      sparse.value = config.value;
      sparse.ks = config.ks;
      sparse.b = config.b.value_or(config.t);
      sparse.d = config.d;
      sparse.noise = {config.sigma, config.epsilon, config.delta};
      sparse.trials = config.trials.value_or(1000);
      sparse.seed = config.seed;
      sparse.workers = config.workers;
      return run_sparse(sparse);
    }
    case ExperimentId::kCities: {
      const Dataset dataset = load_cities_csv(*config.dataset_path);
      DatasetExperiment run;
      run.ks = config.ks;
      run.b = config.b;
      run.kb = config.kb;
      if (!run.b && !run.kb) run.b = 10000;
      run.sigma = config.sigma.value_or(1e4);
      run.seed = config.seed;
      return run_dataset(dataset, run);
    }
    case ExperimentId::kBaskets: {
      const Dataset dataset =
          load_transactions(*config.dataset_path, config.max_basket);
      DatasetExperiment run;
      run.ks = config.ks;
      run.b = config.b;
      run.kb = config.kb;
      if (!run.b && !run.kb) run.kb = 5000;
      run.epsilon = config.epsilon.value_or(1.0);
      run.delta = config.delta.value_or(1e-6);
      run.seed = config.seed;
      return run_dataset(dataset, run);
    }
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown experiment");
}

}  // namespace pcsketch

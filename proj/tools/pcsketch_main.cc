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

// Command-line driver: privacy calibration, sketch build/query, and the
// error-distribution experiments. Errors go to stderr as a single line
//   error: code=<code> message=<text>
// with a nonzero exit status.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcsketch/analysis.h"
#include "pcsketch/datasets.h"
#include "pcsketch/error.h"
#include "pcsketch/experiments.h"
#include "pcsketch/hashing.h"
#include "pcsketch/privacy.h"
#include "pcsketch/sketch.h"

namespace {

using pcsketch::Error;
using pcsketch::ErrorCode;

// Sparse vector text input: "index value" per line, 0-based indices, '#'
// comments. Duplicate indices are summed.
pcsketch::SparseVector read_vector_file(const std::string& path,
                                        std::uint64_t d) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<pcsketch::SparseEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t index = 0;
    double value = 0.0;
    if (!(fields >> index >> value)) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": expected \"index value\"");
    }
    entries.push_back({index, value});
  }
  return pcsketch::SparseVector::from_unsorted(d, std::move(entries));
}

std::ofstream open_output(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

struct CalibrateArgs {
  double epsilon = 1.0;
  double delta = 1e-6;
  std::uint32_t k = 1;
};

struct SketchArgs {
  std::string input;
  std::string dataset_path;
  std::string dataset_kind = "transactions";
  std::size_t max_basket = 100;
  std::uint64_t d = 0;
  std::uint32_t k = 5;
  std::uint32_t b = 1000;
  std::uint64_t seed = 1;
  std::string variant = "countsketch";
  std::optional<double> sigma;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::uint64_t noise_seed = 2;
  std::string out;
  std::string family_out;
  bool allow_large = false;
};

struct QueryArgs {
  std::string sketch;
  std::string family;
  std::vector<std::uint64_t> indices;
  std::string estimator = "auto";
  bool all = false;
  bool allow_large = false;
};

struct SummaryArgs {
  std::string dataset_path;
  std::string kind = "transactions";
  std::size_t max_basket = 100;
};

int run_calibrate(const CalibrateArgs& args) {
  const double sigma =
      pcsketch::calibrate_gaussian(args.epsilon, args.delta, args.k);
  std::cout << "sigma=" << pcsketch::format_double(sigma) << '\n';
  std::cout << "rho=" << pcsketch::format_double(pcsketch::zcdp_of(sigma, args.k))
            << '\n';
  return 0;
}

int run_sketch(const SketchArgs& args) {
  pcsketch::SparseVector x;
  if (!args.dataset_path.empty()) {
    const auto ds = args.dataset_kind == "cities"
                        ? pcsketch::load_cities_csv(args.dataset_path)
                        : pcsketch::load_transactions(args.dataset_path,
                                                      args.max_basket);
    x = ds.vector;
  } else if (!args.input.empty()) {
    if (args.d == 0) {
      throw Error(ErrorCode::kInvalidParameter, "--input requires --d");
    }
    x = read_vector_file(args.input, args.d);
  } else {
    throw Error(ErrorCode::kInvalidParameter,
                "need --input or --dataset-path");
  }
  pcsketch::Variant variant;
  if (args.variant == "countsketch") {
    variant = pcsketch::Variant::kCountSketch;
  } else if (args.variant == "countmin") {
    variant = pcsketch::Variant::kCountMin;
  } else {
    throw Error(ErrorCode::kInvalidParameter,
                "unknown variant " + args.variant);
  }
  const pcsketch::SketchParams params{x.dimension(), args.k, args.b, args.seed};
  auto family = pcsketch::HashFamily::make_shared(
      params, pcsketch::HashBuildOptions{args.allow_large});
  pcsketch::Sketch sketch = pcsketch::sketch_vector(x, family, variant);

  double sigma = 0.0;
  if (args.sigma) {
    sigma = *args.sigma;
  } else if (args.epsilon || args.delta) {
    if (!args.epsilon || !args.delta) {
      throw Error(ErrorCode::kInvalidParameter, "--eps requires --delta");
    }
    sigma = pcsketch::calibrate_gaussian(*args.epsilon, *args.delta, args.k);
  }
  if (sigma > 0.0) {
    pcsketch::NoiseSource source(args.noise_seed);
    sketch = pcsketch::privatize(std::move(sketch),
                                 pcsketch::NoiseSpec::gaussian(sigma), source);
  }
  auto out = open_output(args.out, true);
  sketch.serialize(out);
  if (!args.family_out.empty()) {
    auto fout = open_output(args.family_out, true);
    family->serialize(fout);
  }
  std::cout << "d=" << params.d << " k=" << params.k << " b=" << params.b
            << " sigma=" << pcsketch::format_double(sigma) << '\n';
  return 0;
}

int run_query(const QueryArgs& args) {
  std::shared_ptr<const pcsketch::HashFamily> family;
  const pcsketch::HashBuildOptions options{args.allow_large};
  if (!args.family.empty()) {
    std::ifstream fin(args.family, std::ios::binary);
    if (!fin) throw Error(ErrorCode::kIo, "cannot open " + args.family);
    family = std::make_shared<const pcsketch::HashFamily>(
        pcsketch::HashFamily::deserialize(fin, options));
  }
  std::ifstream in(args.sketch, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + args.sketch);
  const auto sketch = pcsketch::Sketch::deserialize(in, family, options);

  pcsketch::Estimator estimator;
  if (args.estimator == "auto") {
    estimator = pcsketch::Estimator::kAuto;
  } else if (args.estimator == "median") {
    estimator = pcsketch::Estimator::kMedian;
  } else if (args.estimator == "mean") {
    estimator = pcsketch::Estimator::kMean;
  } else if (args.estimator == "min") {
    estimator = pcsketch::Estimator::kMin;
  } else {
    throw Error(ErrorCode::kInvalidParameter,
                "unknown estimator " + args.estimator);
  }
  std::vector<std::uint64_t> indices = args.indices;
  if (args.all) {
    indices.clear();
    for (std::uint64_t i = 0; i < sketch.params().d; ++i) indices.push_back(i);
  }
  const auto estimates = pcsketch::estimate_all(sketch, indices, estimator);
  std::cout << "index,estimate\n";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::cout << indices[i] << ',' << pcsketch::format_double(estimates[i])
              << '\n';
  }
  return 0;
}

int run_summary(const SummaryArgs& args) {
  const auto ds = args.kind == "cities"
                      ? pcsketch::load_cities_csv(args.dataset_path)
                      : pcsketch::load_transactions(args.dataset_path,
                                                    args.max_basket);
  pcsketch::write_summary(std::cout, ds);
  return 0;
}

int run_experiment_command(const std::string& id,
                           pcsketch::ExperimentConfig config,
                           const std::string& dataset_path,
                           const std::string& out_path) {
  const auto parsed = pcsketch::parse_experiment_id(id);
  if (!parsed) {
    throw Error(ErrorCode::kInvalidParameter, "unknown experiment " + id);
  }
  config.id = *parsed;
  if (!dataset_path.empty()) config.dataset_path = dataset_path;
  const auto result = pcsketch::run_experiment(config);
  for (const auto& note : result.notes) std::cerr << "note: " << note << '\n';
  if (out_path.empty() || out_path == "-") {
    pcsketch::write_experiment_csv(std::cout, result);
  } else {
    auto out = open_output(out_path, false);
    pcsketch::write_experiment_csv(out, result);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private CountSketch: sketching, calibration and experiments"};
  app.require_subcommand(1);

  CalibrateArgs calibrate;
  auto* cal = app.add_subcommand("calibrate",
                                 "Gaussian noise scale and zCDP for (eps, delta, k)");
  cal->add_option("--eps", calibrate.epsilon, "epsilon in (0, 1]")->required();
  cal->add_option("--delta", calibrate.delta, "delta in (0, 1)")->required();
  cal->add_option("--k", calibrate.k, "repetitions")->required();

  SketchArgs sketch;
  auto* sk = app.add_subcommand("sketch", "Build, optionally privatize, and serialize a sketch");
  sk->add_option("--input", sketch.input, "sparse vector file (\"index value\" lines)");
  sk->add_option("--dataset-path", sketch.dataset_path, "cities CSV or FIMI transactions");
  sk->add_option("--dataset-kind", sketch.dataset_kind, "cities | transactions");
  sk->add_option("--max-basket", sketch.max_basket, "basket truncation");
  sk->add_option("--d", sketch.d, "dimension for --input");
  sk->add_option("--k", sketch.k, "repetitions (odd)");
  sk->add_option("--b", sketch.b, "table size (even)");
  sk->add_option("--seed", sketch.seed, "hash seed");
  sk->add_option("--variant", sketch.variant, "countsketch | countmin");
  sk->add_option("--sigma", sketch.sigma, "per-cell Gaussian noise");
  sk->add_option("--eps", sketch.epsilon, "calibrate sigma from epsilon");
  sk->add_option("--delta", sketch.delta, "calibrate sigma from delta");
  sk->add_option("--noise-seed", sketch.noise_seed, "noise generator seed");
  sk->add_option("--out", sketch.out, "output sketch file")->required();
  sk->add_option("--family-out", sketch.family_out, "also write the hash family");
  sk->add_flag("--allow-large", sketch.allow_large, "permit k*d > 2^30");

  QueryArgs query;
  auto* qu = app.add_subcommand("query", "Point estimates from a serialized sketch");
  qu->add_option("--sketch", query.sketch, "sketch file")->required();
  qu->add_option("--family", query.family, "hash family file (default: rebuild from seed)");
  qu->add_option("--index", query.indices, "0-based indices")->delimiter(',');
  qu->add_flag("--all", query.all, "query every index");
  qu->add_option("--estimator", query.estimator, "auto | median | mean | min");
  qu->add_flag("--allow-large", query.allow_large, "permit k*d > 2^30");

  SummaryArgs summary;
  auto* su = app.add_subcommand("summary", "Dataset load statistics");
  su->add_option("--dataset-path", summary.dataset_path, "input file")->required();
  su->add_option("--kind", summary.kind, "cities | transactions");
  su->add_option("--max-basket", summary.max_basket, "basket truncation");

  pcsketch::ExperimentConfig config;
  std::string experiment_id;
  std::string dataset_path;
  std::string out_path;
  std::vector<std::uint32_t> ks;
  auto* ex = app.add_subcommand("experiment", "Error-distribution experiments (CSV)");
  ex->add_option("id", experiment_id,
                 "median_normals | zero_variance | sparse | cities | baskets")
      ->required()
      ->check(CLI::IsMember(
          {"median_normals", "zero_variance", "sparse", "cities", "baskets"}));
  ex->add_option("--k", ks, "comma-separated odd repetitions")->delimiter(',');
  ex->add_option("--b", config.b, "table size");
  ex->add_option("--kb", config.kb, "total sketch cells (b = kb / k)");
  ex->add_option("--sigma", config.sigma, "noise level");
  ex->add_option("--eps", config.epsilon, "epsilon");
  ex->add_option("--delta", config.delta, "delta");
  ex->add_option("--trials", config.trials, "Monte Carlo trials");
  ex->add_option("--seed", config.seed, "master seed");
  ex->add_option("--dataset-path", dataset_path, "dataset file");
  ex->add_option("--out", out_path, "output CSV (default stdout)");
  ex->add_option("--t", config.t, "sparsity (sparse)");
  ex->add_option("--value", config.value, "nonzero value (sparse)");
  ex->add_option("--d", config.d, "dimension (sparse; default t)");
  ex->add_option("--max-basket", config.max_basket, "basket truncation (baskets)");
  ex->add_option("--workers", config.workers, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: code=usage message=" << e.what() << '\n';
    return 2;
  }

  try {
    if (*cal) return run_calibrate(calibrate);
    if (*sk) return run_sketch(sketch);
    if (*qu) return run_query(query);
    if (*su) return run_summary(summary);
    if (*ex) {
      if (!ks.empty()) config.ks = ks;
      return run_experiment_command(experiment_id, config, dataset_path,
                                    out_path);
    }
  } catch (const pcsketch::Error& e) {
    std::cerr << "error: code=" << pcsketch::error_code_name(e.code())
              << " message=" << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: code=internal message=" << e.what() << '\n';
    return 1;
  }
  return 0;
}

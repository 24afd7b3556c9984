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

#ifndef PCSKETCH_SKETCH_H_
#define PCSKETCH_SKETCH_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pcsketch/hashing.h"
#include "pcsketch/noise.h"
#include "pcsketch/sparse_vector.h"

namespace pcsketch {

enum class Variant : std::uint8_t {
  kCountSketch = 0,
  kCountMin = 1,  // signs treated as +1
};

// A k x b table of reals over a shared HashFamily. The table is the image of
// a vector under the sketch's linear map, plus whatever noise has been
// recorded in noise().
//
// Single writer while updating; estimation is const and reentrant.
class Sketch {
 public:
  // All-zero table.
  explicit Sketch(std::shared_ptr<const HashFamily> family,
                  Variant variant = Variant::kCountSketch);

  const HashFamily& family() const { return *family_; }
  const std::shared_ptr<const HashFamily>& shared_family() const {
    return family_;
  }
  const SketchParams& params() const { return family_->params(); }
  Variant variant() const { return variant_; }
  const NoiseSpec& noise() const { return noise_; }
  std::optional<double> clip_bound() const { return clip_bound_; }

  std::span<const double> table() const { return table_; }
  std::span<const double> row(std::uint32_t i) const;
  double at(std::uint32_t row, std::uint32_t bucket) const {
    return table_[std::size_t{row} * params().b + bucket];
  }

  // Adds sign(i, index) * delta to cell (i, bucket(i, index)) of every row.
  void update(std::uint64_t index, double delta);

  // Per-row estimators of x[index]: sign(i, index) * table[i][bucket(i,
  // index)] (unsigned for Count-Min), in row order.
  std::vector<double> row_estimates(std::uint64_t index) const;

  // Euclidean norm of the whole table.
  double norm2() const;

  void scale(double factor);

  // Raw access for noise mechanisms. Callers that add noise must record it
  // through set_noise.
  std::span<double> mutable_table() { return table_; }
  void set_noise(const NoiseSpec& noise);
  void set_clip_bound(std::optional<double> bound) { clip_bound_ = bound; }

  // Same params, variant, noise record, clip bound and bitwise-equal table.
  friend bool operator==(const Sketch& a, const Sketch& b);

  // "PCSS1" magic; params block (d, k, b, seed as little-endian u64);
  // variant byte; noise block (kind byte, scale f64, clip bound f64 with
  // 0 meaning unclipped); then k*b little-endian f64 cells, row-major.
  void serialize(std::ostream& out) const;

  // When `family` is null the family is rebuilt from the stored seed.
  static Sketch deserialize(std::istream& in,
                            std::shared_ptr<const HashFamily> family = nullptr,
                            HashBuildOptions options = {});

 private:
  void check_index(std::uint64_t index) const;

  std::shared_ptr<const HashFamily> family_;
  Variant variant_;
  NoiseSpec noise_;
  std::optional<double> clip_bound_;
  std::vector<double> table_;
};

// Linear map x -> table, accumulated in row-major order.
Sketch sketch_vector(const SparseVector& x,
                     std::shared_ptr<const HashFamily> family,
                     Variant variant = Variant::kCountSketch);

// Require identical params, hash tables and variant. The result records the
// composed noise of both inputs.
Sketch merge_add(const Sketch& a, const Sketch& b);
Sketch merge_sub(const Sketch& a, const Sketch& b);

// Middle order statistic of the k row estimators (k is always odd).
double estimate_median(const Sketch& sketch, std::uint64_t index);
double estimate_mean(const Sketch& sketch, std::uint64_t index);
// Count-Min only.
double estimate_min(const Sketch& sketch, std::uint64_t index);

enum class Estimator {
  kAuto,  // median for CountSketch, min for Count-Min
  kMedian,
  kMean,
  kMin,
};

double estimate(const Sketch& sketch, std::uint64_t index,
                Estimator estimator = Estimator::kAuto);

// Batched point queries. All indices are validated before any estimate is
// computed.
std::vector<double> estimate_all(const Sketch& sketch,
                                 std::span<const std::uint64_t> indices,
                                 Estimator estimator = Estimator::kAuto);

}  // namespace pcsketch

#endif  // PCSKETCH_SKETCH_H_

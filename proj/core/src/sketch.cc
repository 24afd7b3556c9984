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

#include "pcsketch/sketch.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "pcsketch/error.h"
#include "wire.h"

namespace pcsketch {
namespace {

constexpr std::string_view kMagic = "PCSS1";

void check_compatible(const Sketch& a, const Sketch& b) {
  if (a.params() != b.params()) {
    throw Error(ErrorCode::kIncompatibleSketch,
                "sketches have different parameters");
  }
  if (a.shared_family() != b.shared_family() &&
      a.family().fingerprint() != b.family().fingerprint()) {
    throw Error(ErrorCode::kIncompatibleSketch,
                "sketches use different hash functions");
  }
  if (a.variant() != b.variant()) {
    throw Error(ErrorCode::kIncompatibleSketch,
                "cannot merge CountSketch with Count-Min");
  }
}

std::optional<double> compose_clip(std::optional<double> a,
                                   std::optional<double> b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

void require_variant(const Sketch& sketch, Variant variant, const char* op) {
  if (sketch.variant() != variant) {
    throw Error(ErrorCode::kWrongVariant,
                std::string(op) + " requires a " +
                    (variant == Variant::kCountSketch ? "CountSketch"
                                                      : "Count-Min") +
                    " sketch");
  }
}

}  // namespace

Sketch::Sketch(std::shared_ptr<const HashFamily> family, Variant variant)
    : family_(std::move(family)), variant_(variant) {
  if (!family_) {
    throw Error(ErrorCode::kInvalidParameter, "sketch requires a hash family");
  }
  table_.assign(std::size_t{params().k} * params().b, 0.0);
}

std::span<const double> Sketch::row(std::uint32_t i) const {
  return std::span<const double>(table_).subspan(std::size_t{i} * params().b,
                                                 params().b);
}

void Sketch::check_index(std::uint64_t index) const {
  if (index >= params().d) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(index) + " outside dimension " +
                    std::to_string(params().d));
  }
}

void Sketch::update(std::uint64_t index, double delta) {
  check_index(index);
  if (!std::isfinite(delta)) {
    throw Error(ErrorCode::kInvalidParameter, "update delta must be finite");
  }
  const auto& f = *family_;
  const std::uint32_t b = f.b();
  for (std::uint32_t i = 0; i < f.k(); ++i) {
    const double signed_delta =
        variant_ == Variant::kCountMin ? delta : f.sign(i, index) * delta;
    table_[std::size_t{i} * b + f.bucket(i, index)] += signed_delta;
  }
}

std::vector<double> Sketch::row_estimates(std::uint64_t index) const {
  check_index(index);
  const auto& f = *family_;
  std::vector<double> out(f.k());
  for (std::uint32_t i = 0; i < f.k(); ++i) {
    const double cell = at(i, f.bucket(i, index));
    out[i] = variant_ == Variant::kCountMin ? cell : f.sign(i, index) * cell;
  }
  return out;
}

double Sketch::norm2() const {
  double sum = 0.0;
  for (double v : table_) sum += v * v;
  return std::sqrt(sum);
}

void Sketch::scale(double factor) {
  for (double& v : table_) v *= factor;
}

void Sketch::set_noise(const NoiseSpec& noise) {
  noise.validate();
  noise_ = noise;
}

bool operator==(const Sketch& a, const Sketch& b) {
  if (a.params() != b.params() || a.variant_ != b.variant_ ||
      a.noise_ != b.noise_ || a.clip_bound_ != b.clip_bound_) {
    return false;
  }
  return std::equal(a.table_.begin(), a.table_.end(), b.table_.begin(),
                    [](double x, double y) {
                      return std::bit_cast<std::uint64_t>(x) ==
                             std::bit_cast<std::uint64_t>(y);
                    });
}

void Sketch::serialize(std::ostream& out) const {
  wire::write_magic(out, kMagic);
  wire::write_u64(out, params().d);
  wire::write_u64(out, params().k);
  wire::write_u64(out, params().b);
  wire::write_u64(out, params().seed);
  wire::write_u8(out, static_cast<std::uint8_t>(variant_));
  wire::write_u8(out, static_cast<std::uint8_t>(noise_.kind));
  wire::write_f64(out, noise_.scale);
  wire::write_f64(out, clip_bound_.value_or(0.0));
  for (double v : table_) wire::write_f64(out, v);
  if (!out) throw Error(ErrorCode::kIo, "failed writing sketch");
}

Sketch Sketch::deserialize(std::istream& in,
                           std::shared_ptr<const HashFamily> family,
                           HashBuildOptions options) {
  wire::read_magic(in, kMagic);
  SketchParams params;
  params.d = wire::read_u64(in);
  const std::uint64_t k = wire::read_u64(in);
  const std::uint64_t b = wire::read_u64(in);
  if (k > UINT32_MAX || b > UINT32_MAX) {
    throw Error(ErrorCode::kFormat, "k or b does not fit in 32 bits");
  }
  params.k = static_cast<std::uint32_t>(k);
  params.b = static_cast<std::uint32_t>(b);
  params.seed = wire::read_u64(in);
  params.validate();

  const std::uint8_t variant = wire::read_u8(in);
  if (variant > 1) throw Error(ErrorCode::kFormat, "unknown sketch variant");
  const std::uint8_t kind = wire::read_u8(in);
  if (kind > 2) throw Error(ErrorCode::kFormat, "unknown noise kind");
  NoiseSpec noise{static_cast<NoiseKind>(kind), wire::read_f64(in)};
  noise.validate();
  const double clip = wire::read_f64(in);

  if (family) {
    if (family->params() != params) {
      throw Error(ErrorCode::kIncompatibleSketch,
                  "supplied hash family does not match sketch parameters");
    }
  } else {
    family = HashFamily::make_shared(params, options);
  }
  Sketch sketch(std::move(family), static_cast<Variant>(variant));
  for (double& v : sketch.table_) v = wire::read_f64(in);
  sketch.noise_ = noise;
  if (clip != 0.0) sketch.clip_bound_ = clip;
  return sketch;
}

Sketch sketch_vector(const SparseVector& x,
                     std::shared_ptr<const HashFamily> family,
                     Variant variant) {
  Sketch sketch(std::move(family), variant);
  const auto& f = sketch.family();
  if (x.dimension() != f.d()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector dimension " + std::to_string(x.dimension()) +
                    " does not match sketch dimension " +
                    std::to_string(f.d()));
  }
  auto table = sketch.mutable_table();
  const std::uint32_t b = f.b();
  for (std::uint32_t i = 0; i < f.k(); ++i) {
    double* row = table.data() + std::size_t{i} * b;
    for (const auto& e : x.entries()) {
      const double v =
          variant == Variant::kCountMin ? e.value : f.sign(i, e.index) * e.value;
      row[f.bucket(i, e.index)] += v;
    }
  }
  return sketch;
}

Sketch merge_add(const Sketch& a, const Sketch& b) {
  check_compatible(a, b);
  Sketch out = a;
  auto table = out.mutable_table();
  auto other = b.table();
  for (std::size_t i = 0; i < table.size(); ++i) table[i] += other[i];
  out.set_noise(compose(a.noise(), b.noise()));
  out.set_clip_bound(compose_clip(a.clip_bound(), b.clip_bound()));
  return out;
}

Sketch merge_sub(const Sketch& a, const Sketch& b) {
  check_compatible(a, b);
  Sketch out = a;
  auto table = out.mutable_table();
  auto other = b.table();
  for (std::size_t i = 0; i < table.size(); ++i) table[i] -= other[i];
  out.set_noise(compose(a.noise(), b.noise()));
  out.set_clip_bound(compose_clip(a.clip_bound(), b.clip_bound()));
  return out;
}

double estimate_median(const Sketch& sketch, std::uint64_t index) {
  require_variant(sketch, Variant::kCountSketch, "estimate_median");
  auto values = sketch.row_estimates(index);
  const auto mid = values.begin() + values.size() / 2;
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

double estimate_mean(const Sketch& sketch, std::uint64_t index) {
  require_variant(sketch, Variant::kCountSketch, "estimate_mean");
  const auto values = sketch.row_estimates(index);
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double estimate_min(const Sketch& sketch, std::uint64_t index) {
  require_variant(sketch, Variant::kCountMin, "estimate_min");
  const auto values = sketch.row_estimates(index);
  return *std::min_element(values.begin(), values.end());
}

double estimate(const Sketch& sketch, std::uint64_t index,
                Estimator estimator) {
  switch (estimator) {
    case Estimator::kAuto:
      return sketch.variant() == Variant::kCountMin
                 ? estimate_min(sketch, index)
                 : estimate_median(sketch, index);
    case Estimator::kMedian:
      return estimate_median(sketch, index);
    case Estimator::kMean:
      return estimate_mean(sketch, index);
    case Estimator::kMin:
      return estimate_min(sketch, index);
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown estimator");
}

std::vector<double> estimate_all(const Sketch& sketch,
                                 std::span<const std::uint64_t> indices,
                                 Estimator estimator) {
  for (std::uint64_t index : indices) {
    if (index >= sketch.params().d) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "batch index " + std::to_string(index) +
                      " outside dimension " +
                      std::to_string(sketch.params().d));
    }
  }
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::uint64_t index : indices) {
    out.push_back(estimate(sketch, index, estimator));
  }
  return out;
}

}  // namespace pcsketch

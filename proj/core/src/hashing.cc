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

#include "pcsketch/hashing.h"

#include <istream>
#include <ostream>
#include <string>

#include "pcsketch/error.h"
#include "pcsketch/random.h"
#include "wire.h"

namespace pcsketch {
namespace {

constexpr std::string_view kMagic = "PCSH1";

void check_size(const SketchParams& params, HashBuildOptions options) {
  // k*d cannot overflow: k < 2^32 and the guard bounds d first.
  if (!options.allow_large &&
      (params.d > kMaxHashEntries ||
       params.d * params.k > kMaxHashEntries)) {
    throw Error(ErrorCode::kInvalidParameter,
                "hash family with k*d = " + std::to_string(params.k) + "*" +
                    std::to_string(params.d) +
                    " entries exceeds 2^30; set allow_large to override");
  }
}

std::uint64_t digest(const SketchParams& params,
                     const std::vector<std::uint32_t>& buckets,
                     const std::vector<std::int8_t>& signs) {
  std::uint64_t h = mix64(params.d) ^ mix64(params.k + (std::uint64_t{params.b} << 32));
  h = mix64(h ^ params.seed);
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    const std::uint64_t word =
        (std::uint64_t{buckets[i]} << 1) | (signs[i] > 0 ? 1u : 0u);
    h = (h ^ word) * 0x100000001b3ULL;
  }
  return mix64(h);
}

}  // namespace

void SketchParams::validate() const {
  if (d == 0) {
    throw Error(ErrorCode::kInvalidParameter, "dimension d must be >= 1");
  }
  if (k == 0 || k % 2 == 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "repetitions k must be a positive odd integer, got " +
                    std::to_string(k));
  }
  if (b == 0 || b % 2 != 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "table size b must be a positive even integer, got " +
                    std::to_string(b));
  }
}

HashFamily::HashFamily(const SketchParams& params,
                       std::vector<std::uint32_t> buckets,
                       std::vector<std::int8_t> signs)
    : params_(params),
      buckets_(std::move(buckets)),
      signs_(std::move(signs)),
      fingerprint_(digest(params_, buckets_, signs_)) {}

HashFamily HashFamily::build(const SketchParams& params,
                             HashBuildOptions options) {
  params.validate();
  check_size(params, options);
  const std::uint64_t n = params.d * params.k;
  std::vector<std::uint32_t> buckets(n);
  std::vector<std::int8_t> signs(n);
  Engine engine = make_engine(params.seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    // One draw per cell: the low bit picks the sign, the high 32 bits are
    // scaled into [0, b) by a multiply-shift.
    const std::uint64_t r = engine();
    signs[i] = (r & 1) ? 1 : -1;
    buckets[i] = static_cast<std::uint32_t>(((r >> 32) * params.b) >> 32);
  }
  return HashFamily(params, std::move(buckets), std::move(signs));
}

std::shared_ptr<const HashFamily> HashFamily::make_shared(
    const SketchParams& params, HashBuildOptions options) {
  return std::make_shared<const HashFamily>(build(params, options));
}

HashFamily HashFamily::from_tables(const SketchParams& params,
                                   std::vector<std::uint32_t> buckets,
                                   std::vector<std::int8_t> signs) {
  params.validate();
  const std::uint64_t n = params.d * params.k;
  if (buckets.size() != n || signs.size() != n) {
    throw Error(ErrorCode::kInvalidParameter,
                "hash tables must each hold k*d = " + std::to_string(n) +
                    " entries");
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (buckets[i] >= params.b) {
      throw Error(ErrorCode::kInvalidParameter,
                  "bucket value " + std::to_string(buckets[i]) +
                      " outside [0, b)");
    }
    if (signs[i] != 1 && signs[i] != -1) {
      throw Error(ErrorCode::kInvalidParameter, "sign values must be +-1");
    }
  }
  return HashFamily(params, std::move(buckets), std::move(signs));
}

void HashFamily::serialize(std::ostream& out) const {
  wire::write_magic(out, kMagic);
  wire::write_u64(out, params_.d);
  wire::write_u64(out, params_.k);
  wire::write_u64(out, params_.b);
  wire::write_u64(out, params_.seed);
  for (std::uint32_t v : buckets_) wire::write_u32(out, v);
  out.write(reinterpret_cast<const char*>(signs_.data()),
            static_cast<std::streamsize>(signs_.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing hash family");
}

HashFamily HashFamily::deserialize(std::istream& in,
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
  check_size(params, options);
  const std::uint64_t n = params.d * params.k;
  std::vector<std::uint32_t> buckets(n);
  for (auto& v : buckets) v = wire::read_u32(in);
  std::vector<std::int8_t> signs(n);
  in.read(reinterpret_cast<char*>(signs.data()),
          static_cast<std::streamsize>(n));
  if (!in) throw Error(ErrorCode::kFormat, "truncated sign table");
  return from_tables(params, std::move(buckets), std::move(signs));
}

}  // namespace pcsketch

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

#ifndef PCSKETCH_HASHING_H_
#define PCSKETCH_HASHING_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace pcsketch {

// Shape of a sketch: k rows ("repetitions") of b buckets over vectors in R^d.
struct SketchParams {
  std::uint64_t d = 1;
  std::uint32_t k = 1;
  std::uint32_t b = 2;
  std::uint64_t seed = 0;

  // Throws pcsketch::Error unless d >= 1, k odd, b even and positive.
  void validate() const;

  friend bool operator==(const SketchParams&, const SketchParams&) = default;
};

struct HashBuildOptions {
  // Explicit tables hold 2*k*d entries; families with k*d above this limit
  // are rejected unless allow_large is set.
  bool allow_large = false;
};

inline constexpr std::uint64_t kMaxHashEntries = std::uint64_t{1} << 30;

// Fully random bucket and sign functions for every row, materialized as
// explicit tables. Immutable after construction.
//
// Storage is row-major: bucket(i, l) lives at buckets_[i * d + l]. Buckets
// are 0-based in [0, b).
class HashFamily {
 public:
  // Draws every bucket uniformly from [0, b) and every sign uniformly from
  // {-1, +1}, deterministically in params.seed.
  static HashFamily build(const SketchParams& params,
                          HashBuildOptions options = {});
  static std::shared_ptr<const HashFamily> make_shared(
      const SketchParams& params, HashBuildOptions options = {});

  // Family with caller-chosen tables (test fixtures, deserialization).
  static HashFamily from_tables(const SketchParams& params,
                                std::vector<std::uint32_t> buckets,
                                std::vector<std::int8_t> signs);

  const SketchParams& params() const { return params_; }
  std::uint64_t d() const { return params_.d; }
  std::uint32_t k() const { return params_.k; }
  std::uint32_t b() const { return params_.b; }

  std::uint32_t bucket(std::uint32_t row, std::uint64_t index) const {
    return buckets_[row * params_.d + index];
  }
  int sign(std::uint32_t row, std::uint64_t index) const {
    return signs_[row * params_.d + index];
  }

  const std::vector<std::uint32_t>& buckets() const { return buckets_; }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  // 64-bit digest of params and both tables; equal families have equal
  // fingerprints.
  std::uint64_t fingerprint() const { return fingerprint_; }

  // "PCSH1" magic, d/k/b/seed as little-endian u64, then k*d buckets as
  // little-endian u32 and k*d signs as int8, both row-major.
  void serialize(std::ostream& out) const;
  static HashFamily deserialize(std::istream& in,
                                HashBuildOptions options = {});

  friend bool operator==(const HashFamily& a, const HashFamily& b) {
    return a.params_ == b.params_ && a.buckets_ == b.buckets_ &&
           a.signs_ == b.signs_;
  }

 private:
  HashFamily(const SketchParams& params, std::vector<std::uint32_t> buckets,
             std::vector<std::int8_t> signs);

  SketchParams params_;
  std::vector<std::uint32_t> buckets_;
  std::vector<std::int8_t> signs_;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace pcsketch

#endif  // PCSKETCH_HASHING_H_

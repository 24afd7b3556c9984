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

#ifndef PCSKETCH_SPARSE_VECTOR_H_
#define PCSKETCH_SPARSE_VECTOR_H_

#include <cstdint>
#include <span>
#include <vector>

namespace pcsketch {

struct SparseEntry {
  std::uint64_t index;  // 0-based coordinate in [0, dimension)
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// A vector in R^d stored as (index, value) pairs with strictly increasing
// indices. Explicit zeros are allowed but never produced by the arithmetic
// helpers below.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::uint64_t dimension);

  // Validates dimension >= 1, indices in range, strictly increasing, and
  // finite values. Throws pcsketch::Error otherwise.
  static SparseVector from_entries(std::uint64_t dimension,
                                   std::vector<SparseEntry> entries);
  // Like from_entries, but sorts and sums duplicate indices first.
  static SparseVector from_unsorted(std::uint64_t dimension,
                                    std::vector<SparseEntry> entries);
  static SparseVector from_dense(std::span<const double> values);

  std::uint64_t dimension() const { return dimension_; }
  std::span<const SparseEntry> entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  double value_at(std::uint64_t index) const;
  double norm2() const;
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::uint64_t dimension_ = 0;
  std::vector<SparseEntry> entries_;
};

// alpha * x + beta * y; exact zeros are dropped.
SparseVector linear_combination(double alpha, const SparseVector& x,
                                double beta, const SparseVector& y);

}  // namespace pcsketch

#endif  // PCSKETCH_SPARSE_VECTOR_H_

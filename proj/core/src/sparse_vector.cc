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

#include "pcsketch/sparse_vector.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcsketch/error.h"

namespace pcsketch {

SparseVector::SparseVector(std::uint64_t dimension) : dimension_(dimension) {
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidParameter, "vector dimension must be >= 1");
  }
}

SparseVector SparseVector::from_entries(std::uint64_t dimension,
                                        std::vector<SparseEntry> entries) {
  SparseVector v(dimension);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.index >= dimension) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "index " + std::to_string(e.index) +
                      " outside dimension " + std::to_string(dimension));
    }
    if (i > 0 && entries[i - 1].index >= e.index) {
      throw Error(ErrorCode::kInvalidParameter,
                  "sparse indices must be strictly increasing");
    }
    if (!std::isfinite(e.value)) {
      throw Error(ErrorCode::kInvalidParameter, "sparse values must be finite");
    }
  }
  v.entries_ = std::move(entries);
  return v;
}

SparseVector SparseVector::from_unsorted(std::uint64_t dimension,
                                         std::vector<SparseEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SparseEntry& a, const SparseEntry& b) {
                     return a.index < b.index;
                   });
  std::vector<SparseEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  return from_entries(dimension, std::move(merged));
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.push_back({i, values[i]});
  }
  return from_entries(values.size(), std::move(entries));
}

double SparseVector::value_at(std::uint64_t index) const {
  if (index >= dimension_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(index) + " outside dimension " +
                    std::to_string(dimension_));
  }
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, std::uint64_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->value : 0.0;
}

double SparseVector::norm2() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.value * e.value;
  return std::sqrt(sum);
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (const auto& e : entries_) out[e.index] = e.value;
  return out;
}

SparseVector linear_combination(double alpha, const SparseVector& x,
                                double beta, const SparseVector& y) {
  if (x.dimension() != y.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot combine vectors of dimension " +
                    std::to_string(x.dimension()) + " and " +
                    std::to_string(y.dimension()));
  }
  std::vector<SparseEntry> out;
  auto xs = x.entries();
  auto ys = y.entries();
  std::size_t i = 0, j = 0;
  auto emit = [&out](std::uint64_t index, double value) {
    if (value != 0.0) out.push_back({index, value});
  };
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].index < ys[j].index)) {
      emit(xs[i].index, alpha * xs[i].value);
      ++i;
    } else if (i == xs.size() || ys[j].index < xs[i].index) {
      emit(ys[j].index, beta * ys[j].value);
      ++j;
    } else {
      emit(xs[i].index, alpha * xs[i].value + beta * ys[j].value);
      ++i;
      ++j;
    }
  }
  return SparseVector::from_entries(x.dimension(), std::move(out));
}

}  // namespace pcsketch

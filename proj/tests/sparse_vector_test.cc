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

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "pcsketch/error.h"

namespace pcsketch {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pcsketch::Error";
  return ErrorCode::kIo;
}

TEST(SparseVectorTest, RejectsZeroDimension) {
  EXPECT_EQ(code_of([] { SparseVector v(0); }), ErrorCode::kInvalidParameter);
}

TEST(SparseVectorTest, FromEntriesValidates) {
  EXPECT_EQ(code_of([] { SparseVector::from_entries(5, {{5, 1.0}}); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([] { SparseVector::from_entries(5, {{2, 1.0}, {2, 1.0}}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { SparseVector::from_entries(5, {{3, 1.0}, {1, 1.0}}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] {
              SparseVector::from_entries(
                  5, {{1, std::numeric_limits<double>::quiet_NaN()}});
            }),
            ErrorCode::kInvalidParameter);
}

TEST(SparseVectorTest, FromUnsortedSumsDuplicates) {
  const auto v = SparseVector::from_unsorted(10, {{7, 1.0}, {2, 3.0}, {7, 2.5}});
  ASSERT_EQ(v.nnz(), 2u);
  EXPECT_EQ(v.entries()[0], (SparseEntry{2, 3.0}));
  EXPECT_EQ(v.entries()[1], (SparseEntry{7, 3.5}));
}

TEST(SparseVectorTest, DenseRoundTripDropsZeros) {
  const std::vector<double> dense = {0.0, -1.0, 0.0, 4.0};
  const auto v = SparseVector::from_dense(dense);
  EXPECT_EQ(v.dimension(), 4u);
  EXPECT_EQ(v.nnz(), 2u);
  EXPECT_EQ(v.to_dense(), dense);
  EXPECT_EQ(v.value_at(0), 0.0);
  EXPECT_EQ(v.value_at(3), 4.0);
  EXPECT_THROW(v.value_at(4), Error);
  EXPECT_DOUBLE_EQ(v.norm2(), std::sqrt(17.0));
}

TEST(SparseVectorTest, LinearCombination) {
  const auto x = SparseVector::from_dense(std::vector<double>{1, 2, 0, 0});
  const auto y = SparseVector::from_dense(std::vector<double>{0, 1, 5, 0});
  const auto z = linear_combination(1.0, x, -2.0, y);
  EXPECT_EQ(z.to_dense(), (std::vector<double>{1, 0, -10, 0}));
  EXPECT_EQ(z.nnz(), 2u);  // cancelled coordinate is gone
  EXPECT_THROW(linear_combination(1.0, x, 1.0, SparseVector(3)), Error);
}

}  // namespace
}  // namespace pcsketch

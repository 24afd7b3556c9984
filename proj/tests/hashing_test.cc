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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "pcsketch/error.h"

namespace pcsketch {
namespace {

TEST(SketchParamsTest, RejectsEvenKOddBZeroD) {
  EXPECT_THROW((SketchParams{4, 2, 2, 0}.validate()), Error);
  EXPECT_THROW((SketchParams{4, 3, 3, 0}.validate()), Error);
  EXPECT_THROW((SketchParams{4, 3, 0, 0}.validate()), Error);
  EXPECT_THROW((SketchParams{0, 3, 2, 0}.validate()), Error);
  EXPECT_THROW((SketchParams{4, 0, 2, 0}.validate()), Error);
  EXPECT_NO_THROW((SketchParams{4, 3, 2, 0}.validate()));
  try {
    HashFamily::build({4, 2, 2, 7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
  }
}

TEST(HashFamilyTest, SameSeedSameTables) {
  const SketchParams params{4, 1, 2, 1234};
  const HashFamily a = HashFamily::build(params);
  const HashFamily b = HashFamily::build(params);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());

  const HashFamily c = HashFamily::build({4, 1, 2, 1235});
  const HashFamily big1 = HashFamily::build({1000, 3, 64, 1});
  const HashFamily big2 = HashFamily::build({1000, 3, 64, 2});
  EXPECT_NE(big1, big2);
  EXPECT_NE(big1.fingerprint(), big2.fingerprint());
  (void)c;
}

TEST(HashFamilyTest, BucketsWithinTwoWhenBIsTwo) {
  const HashFamily f = HashFamily::build({500, 5, 2, 9});
  for (auto v : f.buckets()) EXPECT_LT(v, 2u);
}

TEST(HashFamilyTest, RangeSweep) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t d = 1 + rng() % 300;
    const std::uint32_t k = 1 + 2 * static_cast<std::uint32_t>(rng() % 6);
    const std::uint32_t b = 2 * (1 + static_cast<std::uint32_t>(rng() % 50));
    const HashFamily f = HashFamily::build({d, k, b, rng()});
    ASSERT_EQ(f.buckets().size(), d * k);
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint64_t l = 0; l < d; ++l) {
        ASSERT_LT(f.bucket(i, l), b);
        ASSERT_TRUE(f.sign(i, l) == 1 || f.sign(i, l) == -1);
      }
    }
  }
}

TEST(HashFamilyTest, BucketCountsPassChiSquareAgainstUniform) {
  const std::uint32_t b = 16;
  const HashFamily f = HashFamily::build({100000, 1, b, 2024});
  std::vector<double> counts(b, 0.0);
  for (auto v : f.buckets()) counts[v] += 1.0;
  const double expected = 100000.0 / b;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(b - 1);
  const double critical = boost::math::quantile(dist, 1.0 - 1e-4);
  EXPECT_LT(stat, critical);
}

TEST(HashFamilyTest, SignsUncorrelatedWithBuckets) {
  const HashFamily f = HashFamily::build({100000, 1, 16, 77});
  double sb = 0.0, s = 0.0, bsum = 0.0, bb = 0.0;
  const double n = 100000.0;
  for (std::uint64_t l = 0; l < 100000; ++l) {
    const double sign = f.sign(0, l);
    const double bucket = f.bucket(0, l);
    sb += sign * bucket;
    s += sign;
    bsum += bucket;
    bb += bucket * bucket;
  }
  const double cov = sb / n - (s / n) * (bsum / n);
  const double var_b = bb / n - (bsum / n) * (bsum / n);
  const double var_s = 1.0 - (s / n) * (s / n);
  const double corr = cov / std::sqrt(var_b * var_s);
  EXPECT_LT(std::fabs(corr), 4.0 / std::sqrt(n));
}

TEST(HashFamilyTest, MemoryGuard) {
  const SketchParams huge{std::uint64_t{1} << 29, 3, 2, 0};
  try {
    HashFamily::build(huge);
    FAIL() << "expected the size guard to trip";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
  }
}

TEST(HashFamilyTest, SerializationRoundTripIsBitExact) {
  const HashFamily f = HashFamily::build({257, 5, 30, 0xdeadbeef});
  std::stringstream buf;
  f.serialize(buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 5), "PCSH1");
  // d as little-endian u64 directly after the magic.
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 257 & 0xff);
  EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 1);
  EXPECT_EQ(bytes.size(), 5u + 4 * 8 + 257 * 5 * 5);

  const HashFamily g = HashFamily::deserialize(buf);
  EXPECT_EQ(f, g);
  std::stringstream again;
  g.serialize(again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(HashFamilyTest, DeserializeRejectsBadMagicAndTruncation) {
  std::stringstream bad("PCSX1xxxxxxxx");
  EXPECT_THROW(HashFamily::deserialize(bad), Error);

  const HashFamily f = HashFamily::build({10, 3, 4, 1});
  std::stringstream buf;
  f.serialize(buf);
  std::string bytes = buf.str();
  bytes.resize(bytes.size() - 3);
  std::stringstream truncated(bytes);
  EXPECT_THROW(HashFamily::deserialize(truncated), Error);
}

TEST(HashFamilyTest, FromTablesValidatesRanges) {
  const SketchParams params{2, 1, 2, 0};
  EXPECT_NO_THROW(HashFamily::from_tables(params, {0, 1}, {1, -1}));
  EXPECT_THROW(HashFamily::from_tables(params, {0, 2}, {1, -1}), Error);
  EXPECT_THROW(HashFamily::from_tables(params, {0, 1}, {1, 0}), Error);
  EXPECT_THROW(HashFamily::from_tables(params, {0}, {1}), Error);
}

}  // namespace
}  // namespace pcsketch

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

#include "pcsketch/datasets.h"

#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <sstream>

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

TEST(CitiesTest, TwoRows) {
  std::istringstream in("city,lat,population\nOslo,59.9,700000\n\"Paris, FR\",48.8,2100000\n");
  const Dataset ds = load_cities_csv(in);
  ASSERT_EQ(ds.dimension(), 2u);
  EXPECT_EQ(ds.keys[0], "Oslo");
  EXPECT_EQ(ds.keys[1], "Paris, FR");
  EXPECT_EQ(ds.vector.value_at(ds.index_of.at("Oslo")), 700000.0);
  EXPECT_EQ(ds.vector.value_at(1), 2100000.0);
  EXPECT_EQ(ds.stats.total, 2800000.0);
  EXPECT_FALSE(ds.baskets.has_value());
}

TEST(CitiesTest, AlternateHeaderMissingValuesAndDuplicates) {
  std::istringstream in(
      "Country,City,AccentCity,Region,Population,Latitude,Longitude\n"
      "ad,aixas,Aixàs,06,,42.48,1.46\n"
      "ad,andorra,Andorra la Vella,07,20430,42.5,1.51\n"
      "es,andorra,Andorra,07,100,42.5,1.51\n");
  const Dataset ds = load_cities_csv(in);
  EXPECT_EQ(ds.dimension(), 1u);
  EXPECT_EQ(ds.stats.missing_values, 1u);
  EXPECT_EQ(ds.stats.duplicate_keys, 1u);
  EXPECT_EQ(ds.vector.value_at(0), 20530.0);
}

TEST(CitiesTest, Errors) {
  EXPECT_EQ(code_of([] {
              std::istringstream in("");
              load_cities_csv(in);
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              std::istringstream in("city,population\nA,abc\n");
              load_cities_csv(in);
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              std::istringstream in("name,size\nA,1\n");
              load_cities_csv(in);
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] { load_cities_csv(std::filesystem::path("/nonexistent/x.csv")); }),
            ErrorCode::kIo);
}

TEST(TransactionsTest, DeduplicatesThenTruncates) {
  std::istringstream in("1 2 2 3\n");
  const Dataset ds = load_transactions(in, 2);
  ASSERT_TRUE(ds.baskets.has_value());
  ASSERT_EQ(ds.baskets->size(), 1u);
  EXPECT_EQ(ds.dimension(), 2u);
  EXPECT_EQ(ds.keys, (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(ds.stats.duplicate_items, 1u);
  EXPECT_EQ(ds.stats.truncated_baskets, 1u);
  EXPECT_EQ(ds.stats.truncated_items, 1u);
  EXPECT_EQ(ds.stats.total, 2.0);
  EXPECT_EQ(ds.largest_basket(), 2u);
}

TEST(TransactionsTest, RejectedAndBlankLines) {
  std::istringstream in("1 2\n\n3 x 4\n2 5\n");
  const Dataset ds = load_transactions(in, 10);
  EXPECT_EQ(ds.stats.rejected_lines, 1u);
  EXPECT_EQ(ds.baskets->size(), 3u);  // the blank line is an empty basket
  EXPECT_EQ(ds.vector.value_at(ds.index_of.at("2")), 2.0);
  EXPECT_EQ(ds.index_of.count("3"), 0u);
}

std::string random_transactions(std::uint64_t seed, int lines) {
  std::mt19937_64 rng(seed);
  std::ostringstream out;
  for (int l = 0; l < lines; ++l) {
    const int len = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < len; ++i) out << (i ? " " : "") << rng() % 200;
    out << '\n';
  }
  return out.str();
}

TEST(TransactionsTest, PropertiesOnRandomInput) {
  const std::string text = random_transactions(3, 500);
  for (std::size_t cap : {1u, 5u, 10u, 100u}) {
    std::istringstream a(text), b(text);
    const Dataset first = load_transactions(a, cap);
    const Dataset second = load_transactions(b, cap);
    EXPECT_EQ(first.vector, second.vector);
    EXPECT_EQ(first.keys, second.keys);
    EXPECT_LE(first.largest_basket(), cap);
    double items = 0.0;
    std::vector<double> counts(first.dimension(), 0.0);
    for (const auto& basket : *first.baskets) {
      items += basket.size();
      for (auto i : basket) counts[i] += 1.0;
    }
    EXPECT_EQ(items, first.stats.total);
    EXPECT_EQ(counts, first.vector.to_dense());
  }
}

TEST(NeighboringPairTest, RemovesOneBasket) {
  std::istringstream in("1 2\n2 3\n");
  const Dataset ds = load_transactions(in, 10);
  const auto [x, y] = neighboring_pair(ds, 1);
  EXPECT_EQ(x, ds.vector);
  EXPECT_EQ(y.to_dense(), (std::vector<double>{1, 1, 0}));
  const auto diff = linear_combination(1.0, x, -1.0, y);
  EXPECT_DOUBLE_EQ(diff.norm2(), std::sqrt(2.0));
  EXPECT_THROW(neighboring_pair(ds, 2), Error);

  std::istringstream cities("city,population\nA,1\n");
  EXPECT_THROW(neighboring_pair(load_cities_csv(cities), 0), Error);
}

TEST(SummaryTest, ContainsTotals) {
  std::istringstream in("1 2\n2 3\n");
  std::ostringstream out;
  write_summary(out, load_transactions(in, 10, "tiny"));
  EXPECT_NE(out.str().find("name: tiny"), std::string::npos);
  EXPECT_NE(out.str().find("total: 4"), std::string::npos);
  EXPECT_NE(out.str().find("baskets: 2"), std::string::npos);
}

TEST(FileLoadTest, ReadsFromDisk) {
  const auto path = std::filesystem::temp_directory_path() / "pcsketch_tx_test.dat";
  {
    std::ofstream f(path);
    f << "5 6\n6\n";
  }
  const Dataset ds = load_transactions(path, 10);
  EXPECT_EQ(ds.stats.total, 3.0);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace pcsketch

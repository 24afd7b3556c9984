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

#ifndef PCSKETCH_DATASETS_H_
#define PCSKETCH_DATASETS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcsketch/sparse_vector.h"

namespace pcsketch {

struct LoadStats {
  std::uint64_t lines = 0;             // non-blank input lines
  std::uint64_t rejected_lines = 0;    // transactions with non-integer tokens
  std::uint64_t duplicate_keys = 0;    // repeated city names (summed)
  std::uint64_t missing_values = 0;    // rows with an empty population field
  std::uint64_t duplicate_items = 0;   // repeated items dropped within baskets
  std::uint64_t truncated_baskets = 0;
  std::uint64_t truncated_items = 0;
  double total = 0.0;                  // sum of all vector entries
};

// Aggregate count vector over a string-keyed universe. keys[i] is the key
// of coordinate i; indices are assigned in first-seen order.
struct Dataset {
  std::string name;
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::uint64_t> index_of;
  SparseVector vector;
  std::optional<std::vector<std::vector<std::uint64_t>>> baskets;
  std::optional<std::size_t> max_basket;
  LoadStats stats;

  std::uint64_t dimension() const { return keys.size(); }
  // Largest basket size after truncation (0 without baskets).
  std::size_t largest_basket() const;
  std::vector<std::uint64_t> support() const;
};

// CSV with a header row naming a city column (city, city_ascii, City or
// AccentCity) and a population column (population or Population). Quoted
// fields follow RFC 4180. Repeated city names are summed and counted in
// stats.duplicate_keys; rows with an empty population are skipped and
// counted in stats.missing_values. A non-numeric population is an error.
Dataset load_cities_csv(const std::filesystem::path& path);
Dataset load_cities_csv(std::istream& in, std::string name = "cities");

// FIMI transaction format: one basket per line, whitespace-separated integer
// item IDs. Items are deduplicated within a basket (first occurrence kept),
// then the basket is truncated to its first max_basket items. Lines with a
// non-integer token are skipped and counted in stats.rejected_lines.
Dataset load_transactions(const std::filesystem::path& path,
                          std::size_t max_basket);
Dataset load_transactions(std::istream& in, std::size_t max_basket,
                          std::string name = "transactions");

// (full vector, vector without basket `basket_index`).
std::pair<SparseVector, SparseVector> neighboring_pair(
    const Dataset& dataset, std::size_t basket_index);

// Line-oriented "key: value" summary: name, dimension, nnz, total count and
// load statistics.
void write_summary(std::ostream& out, const Dataset& dataset);

}  // namespace pcsketch

#endif  // PCSKETCH_DATASETS_H_

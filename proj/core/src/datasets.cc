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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "pcsketch/analysis.h"
#include "pcsketch/error.h"

namespace pcsketch {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return in;
}

// Splits one RFC 4180 record. Embedded newlines are not supported.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::initializer_list<std::string_view> names) {
  for (std::string_view name : names) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
  }
  return std::nullopt;
}

SparseVector counts_to_vector(const std::vector<double>& counts) {
  std::vector<SparseEntry> entries;
  entries.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0.0) entries.push_back({i, counts[i]});
  }
  return SparseVector::from_entries(std::max<std::size_t>(counts.size(), 1),
                                    std::move(entries));
}

}  // namespace

std::size_t Dataset::largest_basket() const {
  std::size_t m = 0;
  if (baskets) {
    for (const auto& basket : *baskets) m = std::max(m, basket.size());
  }
  return m;
}

std::vector<std::uint64_t> Dataset::support() const {
  std::vector<std::uint64_t> out;
  out.reserve(vector.nnz());
  for (const auto& e : vector.entries()) out.push_back(e.index);
  return out;
}

Dataset load_cities_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_cities_csv(in, path.stem().string());
}

Dataset load_cities_csv(std::istream& in, std::string name) {
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw Error(ErrorCode::kParse, "cities CSV is empty");
  }
  const auto header = split_csv(line);
  const auto city_col =
      find_column(header, {"city", "city_ascii", "City", "AccentCity"});
  const auto pop_col = find_column(header, {"population", "Population"});
  if (!city_col || !pop_col) {
    throw Error(ErrorCode::kParse,
                "cities CSV needs a city and a population column");
  }

  Dataset ds;
  ds.name = std::move(name);
  std::vector<double> counts;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++ds.stats.lines;
    const auto fields = split_csv(line);
    if (fields.size() <= std::max(*city_col, *pop_col)) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": missing columns");
    }
    const std::string key(trim(fields[*city_col]));
    const std::string_view pop_text = trim(fields[*pop_col]);
    if (pop_text.empty()) {
      ++ds.stats.missing_values;
      continue;
    }
    double pop = 0.0;
    auto [ptr, ec] =
        std::from_chars(pop_text.data(), pop_text.data() + pop_text.size(), pop);
    if (ec != std::errc() || ptr != pop_text.data() + pop_text.size() ||
        !std::isfinite(pop) || pop < 0.0) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": non-numeric population \"" +
                                         std::string(pop_text) + "\"");
    }
    auto [it, inserted] = ds.index_of.emplace(key, ds.keys.size());
    if (inserted) {
      ds.keys.push_back(key);
      counts.push_back(pop);
    } else {
      ++ds.stats.duplicate_keys;
      counts[it->second] += pop;
    }
    ds.stats.total += pop;
  }
  if (ds.keys.empty()) {
    throw Error(ErrorCode::kParse, "cities CSV has no data rows");
  }
  ds.vector = counts_to_vector(counts);
  return ds;
}

Dataset load_transactions(const std::filesystem::path& path,
                          std::size_t max_basket) {
  auto in = open_input(path);
  return load_transactions(in, max_basket, path.stem().string());
}

Dataset load_transactions(std::istream& in, std::size_t max_basket,
                          std::string name) {
  if (max_basket == 0) {
    throw Error(ErrorCode::kInvalidParameter, "max_basket must be >= 1");
  }
  Dataset ds;
  ds.name = std::move(name);
  ds.max_basket = max_basket;
  ds.baskets.emplace();
  std::vector<double> counts;
  std::vector<std::uint64_t> items;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  while (std::getline(in, line)) {
    ++ds.stats.lines;
    items.clear();
    seen.clear();
    bool ok = true;
    std::uint64_t duplicates = 0;
    std::string_view rest(line);
    while (true) {
      const auto start = rest.find_first_not_of(" \t\r");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto end = std::min(rest.find_first_of(" \t\r"), rest.size());
      const std::string_view token = rest.substr(0, end);
      rest.remove_prefix(end);
      std::uint64_t item = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), item);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        ok = false;
        break;
      }
      if (seen.insert(item).second) {
        items.push_back(item);
      } else {
        ++duplicates;
      }
    }
    if (!ok) {
      ++ds.stats.rejected_lines;
      continue;
    }
    ds.stats.duplicate_items += duplicates;
    if (items.size() > max_basket) {
      ++ds.stats.truncated_baskets;
      ds.stats.truncated_items += items.size() - max_basket;
      items.resize(max_basket);
    }
    std::vector<std::uint64_t> basket;
    basket.reserve(items.size());
    for (std::uint64_t item : items) {
      auto key = std::to_string(item);
      auto [it, inserted] = ds.index_of.emplace(std::move(key), ds.keys.size());
      if (inserted) {
        ds.keys.push_back(it->first);
        counts.push_back(0.0);
      }
      counts[it->second] += 1.0;
      basket.push_back(it->second);
    }
    ds.stats.total += static_cast<double>(basket.size());
    ds.baskets->push_back(std::move(basket));
  }
  if (ds.keys.empty()) {
    throw Error(ErrorCode::kParse, "transaction file has no items");
  }
  ds.vector = counts_to_vector(counts);
  return ds;
}

std::pair<SparseVector, SparseVector> neighboring_pair(
    const Dataset& dataset, std::size_t basket_index) {
  if (!dataset.baskets) {
    throw Error(ErrorCode::kInvalidParameter, "dataset has no baskets");
  }
  if (basket_index >= dataset.baskets->size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "basket " + std::to_string(basket_index) + " of " +
                    std::to_string(dataset.baskets->size()));
  }
  std::vector<SparseEntry> removal;
  for (std::uint64_t index : (*dataset.baskets)[basket_index]) {
    removal.push_back({index, 1.0});
  }
  const SparseVector basket = SparseVector::from_unsorted(
      dataset.vector.dimension(), std::move(removal));
  return {dataset.vector,
          linear_combination(1.0, dataset.vector, -1.0, basket)};
}

void write_summary(std::ostream& out, const Dataset& dataset) {
  out << "name: " << dataset.name << '\n';
  out << "distinct_ids: " << dataset.dimension() << '\n';
  out << "nonzeros: " << dataset.vector.nnz() << '\n';
  out << "total: " << format_double(dataset.stats.total) << '\n';
  out << "lines: " << dataset.stats.lines << '\n';
  if (dataset.baskets) {
    out << "baskets: " << dataset.baskets->size() << '\n';
    out << "max_basket: " << dataset.max_basket.value_or(0) << '\n';
    out << "largest_basket: " << dataset.largest_basket() << '\n';
    out << "truncated_baskets: " << dataset.stats.truncated_baskets << '\n';
    out << "truncated_items: " << dataset.stats.truncated_items << '\n';
    out << "duplicate_items: " << dataset.stats.duplicate_items << '\n';
    out << "rejected_lines: " << dataset.stats.rejected_lines << '\n';
  } else {
    out << "duplicate_keys: " << dataset.stats.duplicate_keys << '\n';
    out << "missing_values: " << dataset.stats.missing_values << '\n';
  }
}

}  // namespace pcsketch

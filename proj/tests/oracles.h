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

#ifndef PCSKETCH_TESTS_ORACLES_H_
#define PCSKETCH_TESTS_ORACLES_H_

// Brute-force reference computations. These deliberately avoid the library's
// code paths: dense vectors, direct double loops, full sorts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pcsketch/hashing.h"
#include "pcsketch/sparse_vector.h"

namespace pcsketch::oracle {

// table[i][j] = sum over l of s_i(l) x_l [h_i(l) = j], looping over (i, l).
inline std::vector<std::vector<double>> table(const std::vector<double>& x,
                                              const HashFamily& family,
                                              bool signed_rows = true) {
  std::vector<std::vector<double>> out(family.k(),
                                       std::vector<double>(family.b(), 0.0));
  for (std::uint32_t i = 0; i < family.k(); ++i) {
    for (std::uint64_t l = 0; l < x.size(); ++l) {
      const double s = signed_rows ? family.signs()[i * family.d() + l] : 1.0;
      out[i][family.buckets()[i * family.d() + l]] += s * x[l];
    }
  }
  return out;
}

inline std::vector<double> row_estimators(
    const std::vector<std::vector<double>>& tab, const HashFamily& family,
    std::uint64_t index, bool signed_rows = true) {
  std::vector<double> out;
  for (std::uint32_t i = 0; i < family.k(); ++i) {
    const double s = signed_rows ? family.signs()[i * family.d() + index] : 1.0;
    out.push_back(s * tab[i][family.buckets()[i * family.d() + index]]);
  }
  return out;
}

inline double sorted_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s / static_cast<double>(v.size());
}

// Zero the m largest magnitudes (ties: smaller index first) in a dense copy.
inline double tail_norm(const std::vector<double>& x, std::uint64_t m) {
  std::vector<std::uint64_t> idx(x.size());
  for (std::uint64_t i = 0; i < x.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::uint64_t a, std::uint64_t b) {
    if (std::fabs(x[a]) != std::fabs(x[b])) return std::fabs(x[a]) > std::fabs(x[b]);
    return a < b;
  });
  std::vector<double> y = x;
  for (std::uint64_t r = 0; r < m && r < idx.size(); ++r) y[idx[r]] = 0.0;
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

// Nearest-rank quantile by full sort.
inline double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * v.size()));
  if (rank < 1) rank = 1;
  return v[rank - 1];
}

inline double frobenius_distance(const std::vector<std::vector<double>>& a,
                                 const std::vector<std::vector<double>>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      s += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
    }
  }
  return std::sqrt(s);
}

inline std::vector<double> random_dense(std::uint64_t d, std::mt19937_64& rng,
                                        double lo = -10.0, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(d);
  for (double& v : x) v = u(rng);
  return x;
}

}  // namespace pcsketch::oracle

#endif  // PCSKETCH_TESTS_ORACLES_H_

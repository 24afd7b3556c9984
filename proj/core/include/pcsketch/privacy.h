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

#ifndef PCSKETCH_PRIVACY_H_
#define PCSKETCH_PRIVACY_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>

#include "pcsketch/hashing.h"
#include "pcsketch/noise.h"
#include "pcsketch/random.h"
#include "pcsketch/sketch.h"
#include "pcsketch/sparse_vector.h"

namespace pcsketch {

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  std::optional<double> rho;  // zero-concentrated DP parameter
};

// Gaussian-mechanism noise scale for a k-row sketch with single-coordinate
// neighbours (L2 sensitivity sqrt(k)):
//
//   sigma = sqrt(2 k ln(1.25 / delta)) / epsilon.
//
// This is the boundary of the strict inequality sigma^2 > 2k ln(1.25/delta) /
// epsilon^2; callers needing the strict form can shave epsilon slightly.
// Requires 0 < epsilon <= 1 and 0 < delta < 1. epsilon = 1 is accepted as the
// closed end of the Gaussian-mechanism regime; epsilon > 1 is rejected.
double calibrate_gaussian(double epsilon, double delta, std::uint32_t k);

// Same calibration for an arbitrary L2 sensitivity.
double gaussian_sigma_for_sensitivity(double l2_sensitivity, double epsilon,
                                      double delta);

// rho = k / (2 sigma^2).
double zcdp_of(double sigma, std::uint32_t k);

// (epsilon, delta, rho) achieved by per-cell noise sigma on a k-row sketch
// at the given delta; inverse of calibrate_gaussian.
PrivacyBudget budget_from_sigma(double sigma, std::uint32_t k, double delta);

// L2 sensitivity of the sketch under a unit change to one coordinate.
double sensitivity_single(std::uint32_t k);

enum class GroupMode {
  kWorstCase,      // m * sqrt(k), valid for any hash outcome
  kCollisionFree,  // sqrt(m * k), only when no two support items share a cell
};

// L2 sensitivity for neighbours differing by a unit in each coordinate of
// `support`. kCollisionFree throws CollisionError naming the first (row,
// bucket) shared by two support indices.
double group_sensitivity(const HashFamily& family,
                         std::span<const std::uint64_t> support,
                         GroupMode mode);

// Laplace scale for the Count-Min baseline: L1 sensitivity k over epsilon.
double laplace_scale_for_count_min(std::uint32_t k, double epsilon);

// Uniform random bit source for noise. Defaults to a seeded statistical
// generator independent of any hash seed; a caller-supplied entropy function
// (for example a CSPRNG) can be plugged in instead.
//
// Gaussian draws use a standard floating-point sampler. Floating-point
// attacks on continuous samplers are not mitigated.
class NoiseSource {
 public:
  using result_type = std::uint64_t;

  explicit NoiseSource(std::uint64_t seed);
  explicit NoiseSource(std::function<std::uint64_t()> entropy);

  // Independent stream for concurrent privatization of distinct sketches.
  static NoiseSource for_stream(std::uint64_t master_seed,
                                std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  double gaussian(double sigma);
  double laplace(double scale);
  double sample(const NoiseSpec& spec);

 private:
  std::optional<Engine> engine_;
  std::function<std::uint64_t()> entropy_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Adds i.i.d. noise drawn from `source` to every cell and records it. A
// sketch that already carries noise gets the composed record.
Sketch privatize(Sketch sketch, const NoiseSpec& noise, NoiseSource& source);

// Rescales the table by min(1, bound / ||table||_2) and records the bound.
void clip_to_norm(Sketch& sketch, double bound);

struct LdpEncoding {
  double clip_bound = 0.0;  // 2 sqrt(k t)
  double sigma = 0.0;       // clip_bound * sqrt(2 ln(1.25/delta)) / epsilon
};

LdpEncoding ldp_parameters(std::uint32_t k, std::uint32_t t, double epsilon,
                           double delta);

// Local-model release of a t-sparse vector with values in [-1, 1]: sketch,
// clip the table to norm 2 sqrt(k t), then add Gaussian noise scaled to the
// clip bound.
Sketch ldp_encode_sparse(const SparseVector& x, std::uint32_t t,
                         std::shared_ptr<const HashFamily> family,
                         double epsilon, double delta, NoiseSource& source);

}  // namespace pcsketch

#endif  // PCSKETCH_PRIVACY_H_

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

#ifndef PCSKETCH_NOISE_H_
#define PCSKETCH_NOISE_H_

#include <cstdint>

namespace pcsketch {

enum class NoiseKind : std::uint8_t {
  kNone = 0,
  kGaussian = 1,
  kLaplace = 2,
};

// Per-cell additive noise distribution. `scale` is sigma for Gaussian
// noise and the Laplace scale parameter for Laplace noise; it is zero
// exactly when kind is kNone.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double scale = 0.0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(double sigma);
  static NoiseSpec laplace(double scale);

  // Throws pcsketch::Error for negative or non-finite scales and for
  // kind/scale combinations that break the zero-iff-none rule.
  void validate() const;
  double variance() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

// Noise recorded on the sum (or difference) of two independently noised
// sketches. Gaussian variances add exactly; two Laplace components are
// recorded as Laplace with the variance-matched scale. Mixing Gaussian and
// Laplace noise is rejected.
NoiseSpec compose(const NoiseSpec& a, const NoiseSpec& b);

}  // namespace pcsketch

#endif  // PCSKETCH_NOISE_H_

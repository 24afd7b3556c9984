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

#include "pcsketch/privacy.h"

#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "pcsketch/error.h"

namespace pcsketch {
namespace {

void check_epsilon_delta(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void check_k(std::uint32_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidParameter, "k must be >= 1");
}

}  // namespace

NoiseSpec NoiseSpec::gaussian(double sigma) {
  NoiseSpec spec{sigma == 0.0 ? NoiseKind::kNone : NoiseKind::kGaussian, sigma};
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::laplace(double scale) {
  NoiseSpec spec{scale == 0.0 ? NoiseKind::kNone : NoiseKind::kLaplace, scale};
  spec.validate();
  return spec;
}

void NoiseSpec::validate() const {
  if (!std::isfinite(scale) || scale < 0.0) {
    throw Error(ErrorCode::kInvalidParameter,
                "noise scale must be finite and nonnegative");
  }
  if ((kind == NoiseKind::kNone) != (scale == 0.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "noise scale must be zero exactly when kind is none");
  }
}

double NoiseSpec::variance() const {
  switch (kind) {
    case NoiseKind::kNone:
      return 0.0;
    case NoiseKind::kGaussian:
      return scale * scale;
    case NoiseKind::kLaplace:
      return 2.0 * scale * scale;
  }
  return 0.0;
}

NoiseSpec compose(const NoiseSpec& a, const NoiseSpec& b) {
  if (a.kind == NoiseKind::kNone) return b;
  if (b.kind == NoiseKind::kNone) return a;
  if (a.kind != b.kind) {
    throw Error(ErrorCode::kIncompatibleSketch,
                "cannot compose Gaussian and Laplace noise records");
  }
  return NoiseSpec{a.kind, std::hypot(a.scale, b.scale)};
}

double calibrate_gaussian(double epsilon, double delta, std::uint32_t k) {
  check_k(k);
  return gaussian_sigma_for_sensitivity(sensitivity_single(k), epsilon, delta);
}

double gaussian_sigma_for_sensitivity(double l2_sensitivity, double epsilon,
                                      double delta) {
  check_epsilon_delta(epsilon, delta);
  if (!(l2_sensitivity > 0.0) || !std::isfinite(l2_sensitivity)) {
    throw Error(ErrorCode::kInvalidParameter,
                "sensitivity must be positive and finite");
  }
  return l2_sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
}

double zcdp_of(double sigma, std::uint32_t k) {
  check_k(k);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidParameter, "sigma must be positive");
  }
  return static_cast<double>(k) / (2.0 * sigma * sigma);
}

PrivacyBudget budget_from_sigma(double sigma, std::uint32_t k, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "delta must lie in (0, 1)");
  }
  const double rho = zcdp_of(sigma, k);
  const double epsilon =
      std::sqrt(2.0 * k * std::log(1.25 / delta)) / sigma;
  return PrivacyBudget{epsilon, delta, rho};
}

double sensitivity_single(std::uint32_t k) {
  check_k(k);
  return std::sqrt(static_cast<double>(k));
}

double group_sensitivity(const HashFamily& family,
                         std::span<const std::uint64_t> support,
                         GroupMode mode) {
  if (support.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "support must be nonempty");
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t index : support) {
    if (index >= family.d()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "support index " + std::to_string(index) +
                      " outside dimension " + std::to_string(family.d()));
    }
    if (!seen.insert(index).second) {
      throw Error(ErrorCode::kInvalidParameter,
                  "support indices must be distinct");
    }
  }
  const double m = static_cast<double>(support.size());
  const double k = static_cast<double>(family.k());
  if (mode == GroupMode::kWorstCase) return m * std::sqrt(k);

  std::unordered_map<std::uint32_t, std::uint64_t> occupant;
  for (std::uint32_t row = 0; row < family.k(); ++row) {
    occupant.clear();
    for (std::uint64_t index : support) {
      const std::uint32_t bucket = family.bucket(row, index);
      auto [it, inserted] = occupant.emplace(bucket, index);
      if (!inserted) {
        throw CollisionError(
            row, bucket,
            "indices " + std::to_string(it->second) + " and " +
                std::to_string(index) + " share bucket " +
                std::to_string(bucket) + " in row " + std::to_string(row));
      }
    }
  }
  return std::sqrt(m * k);
}

double laplace_scale_for_count_min(std::uint32_t k, double epsilon) {
  check_k(k);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidParameter, "epsilon must be positive");
  }
  return static_cast<double>(k) / epsilon;
}

NoiseSource::NoiseSource(std::uint64_t seed) : engine_(make_engine(seed)) {}

NoiseSource::NoiseSource(std::function<std::uint64_t()> entropy)
    : entropy_(std::move(entropy)) {
  if (!entropy_) {
    throw Error(ErrorCode::kInvalidParameter, "entropy source is empty");
  }
}

NoiseSource NoiseSource::for_stream(std::uint64_t master_seed,
                                    std::uint64_t stream_id) {
  return NoiseSource(derive_seed(master_seed, stream_id));
}

NoiseSource::result_type NoiseSource::operator()() {
  return engine_ ? (*engine_)() : entropy_();
}

double NoiseSource::gaussian(double sigma) {
  return sigma * normal_(*this);
}

double NoiseSource::laplace(double scale) {
  // Inverse CDF on u uniform in (-1/2, 1/2).
  double u;
  do {
    u = std::generate_canonical<double, 64>(*this) - 0.5;
  } while (u == -0.5);
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::fabs(u));
}

double NoiseSource::sample(const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::kNone:
      return 0.0;
    case NoiseKind::kGaussian:
      return gaussian(spec.scale);
    case NoiseKind::kLaplace:
      return laplace(spec.scale);
  }
  return 0.0;
}

Sketch privatize(Sketch sketch, const NoiseSpec& noise, NoiseSource& source) {
  noise.validate();
  if (noise.kind == NoiseKind::kNone) return sketch;
  const NoiseSpec recorded = compose(sketch.noise(), noise);
  for (double& cell : sketch.mutable_table()) cell += source.sample(noise);
  sketch.set_noise(recorded);
  return sketch;
}

void clip_to_norm(Sketch& sketch, double bound) {
  if (!(bound >= 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::kInvalidParameter,
                "clip bound must be finite and nonnegative");
  }
  const double norm = sketch.norm2();
  if (norm > bound) sketch.scale(bound / norm);
  sketch.set_clip_bound(bound);
}

LdpEncoding ldp_parameters(std::uint32_t k, std::uint32_t t, double epsilon,
                           double delta) {
  check_k(k);
  if (t == 0) throw Error(ErrorCode::kInvalidParameter, "t must be >= 1");
  LdpEncoding enc;
  enc.clip_bound = 2.0 * std::sqrt(static_cast<double>(k) * t);
  enc.sigma = gaussian_sigma_for_sensitivity(enc.clip_bound, epsilon, delta);
  return enc;
}

Sketch ldp_encode_sparse(const SparseVector& x, std::uint32_t t,
                         std::shared_ptr<const HashFamily> family,
                         double epsilon, double delta, NoiseSource& source) {
  if (!family) {
    throw Error(ErrorCode::kInvalidParameter, "missing hash family");
  }
  const LdpEncoding enc = ldp_parameters(family->k(), t, epsilon, delta);
  std::size_t nonzeros = 0;
  for (const auto& e : x.entries()) {
    if (e.value < -1.0 || e.value > 1.0) {
      throw Error(ErrorCode::kInvalidParameter,
                  "LDP input values must lie in [-1, 1]");
    }
    if (e.value != 0.0) ++nonzeros;
  }
  if (nonzeros > t) {
    throw Error(ErrorCode::kInvalidParameter,
                "input has " + std::to_string(nonzeros) +
                    " nonzeros, more than t = " + std::to_string(t));
  }
  Sketch sketch = sketch_vector(x, std::move(family));
  clip_to_norm(sketch, enc.clip_bound);
  return privatize(std::move(sketch), NoiseSpec::gaussian(enc.sigma), source);
}

}  // namespace pcsketch

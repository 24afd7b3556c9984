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

#ifndef PCSKETCH_RANDOM_H_
#define PCSKETCH_RANDOM_H_

#include <cstdint>
#include <random>

namespace pcsketch {

// Statistical (non-cryptographic) generator used for hash tables and noise.
using Engine = std::mt19937_64;

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

// Seed for an independent stream `stream` under `master`. Distinct
// (master, stream) pairs give unrelated seeds, so per-trial and per-worker
// streams can be derived without coordination.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t substream);

Engine make_engine(std::uint64_t seed);

}  // namespace pcsketch

#endif  // PCSKETCH_RANDOM_H_

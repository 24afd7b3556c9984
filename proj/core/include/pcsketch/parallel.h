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

#ifndef PCSKETCH_PARALLEL_H_
#define PCSKETCH_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace pcsketch {

// Runs fn(trial) for trial in [0, trials) on up to `workers` threads
// (0 = hardware concurrency). Trials are statically partitioned; callers that
// derive all randomness from the trial index and write results into
// trial-indexed slots get output independent of the worker count.
void for_each_trial(std::size_t trials, unsigned workers,
                    const std::function<void(std::size_t)>& fn);

unsigned resolve_workers(unsigned workers);

}  // namespace pcsketch

#endif  // PCSKETCH_PARALLEL_H_

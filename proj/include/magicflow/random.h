// Copyright 2026 The magicflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAGICFLOW_RANDOM_H
#define MAGICFLOW_RANDOM_H

#include <cstdint>
#include <random>

namespace magicflow {

/// Engine used everywhere. mt19937_64 output is fixed by the standard, and the
/// helpers below avoid the implementation-defined std distributions, so a seed
/// reproduces bit-identical trajectories across standard libraries.
using Rng = std::mt19937_64;

/// One round of the splitmix64 finalizer.
uint64_t splitmix64(uint64_t x);

/// Seed of trajectory `index` in an ensemble with `master_seed`:
///   splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x9E3779B97F4A7C15)).
uint64_t trajectory_seed(uint64_t master_seed, uint64_t index);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng &rng);

/// Uniform integer in [0, bound). bound must be nonzero.
uint64_t uniform_below(Rng &rng, uint64_t bound);

/// Standard normal deviate (Box-Muller, one value per call).
double standard_normal(Rng &rng);

}  // namespace magicflow

#endif

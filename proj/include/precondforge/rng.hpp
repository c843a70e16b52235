// Copyright 2026 The PrecondForge Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace precondforge {

// Every seeded draw in the pipeline goes through these helpers. They use
// only the fully specified std::mt19937_64 output sequence, so results do not
// depend on the standard library's distribution implementations.
std::uint64_t fnv1a64(std::string_view bytes);

std::uint64_t splitmix64(std::uint64_t x);

// Generator keyed by (global seed, key); stable under input re-ordering.
std::mt19937_64 keyed_rng(std::uint64_t seed, std::string_view key);

// Uniform integer in [0, bound) by rejection sampling. bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Fisher-Yates permutation of [0, n).
std::vector<std::size_t> seeded_permutation(std::size_t n,
                                            std::mt19937_64& rng);

// Indices of k distinct elements of [0, n) chosen uniformly, returned in
// ascending order. k >= n returns all indices.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::mt19937_64& rng);

}  // namespace precondforge

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

#include "precondforge/rng.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

namespace precondforge {
namespace {

TEST(Rng, EngineSequenceIsTheStandardOne) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  std::mt19937_64 e;
  e.discard(9999);
  EXPECT_EQ(e(), 9981545732273789042ull);
}

TEST(Rng, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Rng, KeyedStreamsDiffer) {
  auto a = keyed_rng(7, "doc:0");
  auto b = keyed_rng(7, "doc:1");
  auto a2 = keyed_rng(7, "doc:0");
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_EQ(x, a2());
}

TEST(Rng, UniformBelowStaysInRange) {
  auto r = keyed_rng(1, "u");
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = uniform_below(r, 7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (int h : hist) EXPECT_GT(h, 800);
  EXPECT_EQ(uniform_below(r, 1), 0u);
}

TEST(Rng, PermutationAndSample) {
  auto r = keyed_rng(3, "p");
  auto p = seeded_permutation(50, r);
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(50);
  std::iota(iota.begin(), iota.end(), 0);
  EXPECT_EQ(sorted, iota);
  EXPECT_NE(p, iota);

  const auto s = sample_indices(24, 20, r);
  ASSERT_EQ(s.size(), 20u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 20u);
  EXPECT_EQ(sample_indices(5, 9, r).size(), 5u);
}

}  // namespace
}  // namespace precondforge

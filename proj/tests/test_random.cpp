// Copyright 2026 The shadowkit Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "shadowkit/random.hpp"

namespace sk = shadowkit;

TEST(Philox, KnownAnswerVectors) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(sk::philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(sk::philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(sk::philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, SameKeyGivesSameStream) {
  sk::CounterRng a(5, 7);
  sk::CounterRng b(5, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(CounterRng, DistinctStreamsDiffer) {
  sk::CounterRng a(5, 7);
  sk::CounterRng b(5, 8);
  sk::CounterRng c(6, 7);
  int same_b = 0;
  int same_c = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    same_b += x == b.next_u64();
    same_c += x == c.next_u64();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(CounterRng, UniformLiesInUnitIntervalWithCorrectMean) {
  sk::CounterRng rng(1, 0);
  double sum = 0.0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / count, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / count));
}

TEST(CounterRng, BelowIsUnbiased) {
  sk::CounterRng rng(2, 0);
  std::array<int, 3> counts{};
  const int total = 90000;
  for (int i = 0; i < total; ++i) {
    const auto v = rng.below(3);
    ASSERT_LT(v, 3u);
    ++counts[v];
  }
  const double sigma = std::sqrt(total * (1.0 / 3) * (2.0 / 3));
  for (int c : counts) EXPECT_NEAR(c, total / 3.0, 4 * sigma);
}

TEST(CounterRng, NormalHasUnitVariance) {
  sk::CounterRng rng(3, 0);
  double sum = 0.0;
  double sq = 0.0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.015);
  EXPECT_NEAR(sq / count, 1.0, 0.02);
}

TEST(DeriveSeed, IsDeterministicAndSpreads) {
  EXPECT_EQ(sk::derive_seed(1, 2), sk::derive_seed(1, 2));
  EXPECT_EQ(sk::derive_seed(1, 2, 3), sk::derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t p = 0; p < 10; ++p) {
    for (std::uint64_t i = 0; i < 100; ++i) seen.insert(sk::derive_seed(p, i));
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(sk::derive_seed(1, 2, 3), sk::derive_seed(1, 3, 2));
}

TEST(SeededPermutation, IsAPermutationAndReproducible) {
  const auto p = sk::seeded_permutation(50, 9);
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_EQ(p, sk::seeded_permutation(50, 9));
  EXPECT_NE(p, sk::seeded_permutation(50, 10));
}

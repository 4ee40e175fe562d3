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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace shadowkit {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to derive child seeds.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for a hierarchical path, e.g. derive_seed(root, record, 7).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b);

/// Counter-based stream keyed by (seed, stream). Two streams with different
/// ids never share blocks, so draws for snapshot t do not depend on how many
/// values any other snapshot consumed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound) without modulo bias.
  std::uint32_t below(std::uint32_t bound);
  /// Standard normal via Box-Muller (no cached second variate).
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int available_ = 0;
};

/// Seeded Fisher-Yates permutation of [0, n).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace shadowkit

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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "shadowkit/linalg.hpp"

// Data-parallel inner loops with a scalar reference and vectorized variants.
// The vector paths reproduce the scalar results bit for bit: the histogram
// kernel works in exact integer arithmetic and the rotation kernel performs
// the same IEEE operations in the same order (no fused multiply-add).

namespace shadowkit::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view name(Backend backend);

/// Per-qubit doubled snapshot overlap 2*tr(sigma_s sigma_s'): 10 for equal
/// symbols, -8 for orthogonal symbols of one basis, 1 across bases.
inline constexpr std::int8_t kDoubledTraceTable[6][6] = {
    {10, -8, 1, 1, 1, 1}, {-8, 10, 1, 1, 1, 1}, {1, 1, 10, -8, 1, 1},
    {1, 1, -8, 10, 1, 1}, {1, 1, 1, 1, 10, -8}, {1, 1, 1, 1, -8, 10},
};

/// For every snapshot pair (t, t') adds one count at bin
/// `sum_i doubled_trace(a[i][t], b[i][t']) + 8 * n`. Inputs are qubit-major
/// planes: a[i * a_count + t]. `histogram` has 18 * n + 1 bins.
using PairHistogramFn = void (*)(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b,
                                 std::size_t b_count, std::size_t n, bool skip_equal_index,
                                 std::uint64_t* histogram);

/// Applies the 2x2 matrix u (row-major) to every amplitude pair
/// (j, j + stride) with j having a zero bit at `stride`.
using Apply2x2Fn = void (*)(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u);

struct KernelTable {
  Backend backend;
  PairHistogramFn pair_histogram;
  Apply2x2Fn apply_2x2;
};

bool available(Backend backend);
std::vector<Backend> available_backends();

/// Table for a specific backend; throws InvalidArgument when unavailable.
const KernelTable& table(Backend backend);

/// The process-wide selection: the best available backend, unless the
/// SHADOWKIT_SIMD environment variable (scalar|avx2|neon) or force_backend
/// says otherwise.
const KernelTable& active();
void force_backend(Backend backend);

namespace scalar {
void pair_histogram(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b, std::size_t b_count,
                    std::size_t n, bool skip_equal_index, std::uint64_t* histogram);
void apply_2x2(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u);
}  // namespace scalar

namespace avx2 {
void pair_histogram(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b, std::size_t b_count,
                    std::size_t n, bool skip_equal_index, std::uint64_t* histogram);
void apply_2x2(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u);
}  // namespace avx2

namespace neon {
void pair_histogram(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b, std::size_t b_count,
                    std::size_t n, bool skip_equal_index, std::uint64_t* histogram);
void apply_2x2(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u);
}  // namespace neon

}  // namespace shadowkit::simd

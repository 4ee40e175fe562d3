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

#include <immintrin.h>

#include <array>

#include "shadowkit/simd.hpp"

namespace shadowkit::simd::avx2 {

namespace {

// int16 lanes hold partial sums bounded by 10 * n.
constexpr std::size_t kMaxQubitsInt16 = 3000;

struct LookupRows {
  __m256i row[6];
  const __m256i& operator[](std::size_t s) const { return row[s]; }
};

LookupRows make_lookup_rows() {
  LookupRows rows{};
  for (int s = 0; s < 6; ++s) {
    alignas(16) std::int8_t bytes[16] = {};
    for (int v = 0; v < 6; ++v) bytes[v] = kDoubledTraceTable[s][v];
    rows.row[s] = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(bytes)));
  }
  return rows;
}

}  // namespace

void pair_histogram(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b, std::size_t b_count,
                    std::size_t n, bool skip_equal_index, std::uint64_t* histogram) {
  if (n > kMaxQubitsInt16) {
    scalar::pair_histogram(a, a_count, b, b_count, n, skip_equal_index, histogram);
    return;
  }
  const auto rows = make_lookup_rows();
  const auto offset = static_cast<std::int32_t>(8 * n);
  const std::size_t vector_end = b_count - b_count % 32;
  alignas(32) std::int16_t sums[32];
  std::vector<std::int32_t> tail(b_count - vector_end);

  for (std::size_t t = 0; t < a_count; ++t) {
    for (std::size_t u0 = 0; u0 < vector_end; u0 += 32) {
      __m256i acc_lo = _mm256_setzero_si256();
      __m256i acc_hi = _mm256_setzero_si256();
      for (std::size_t i = 0; i < n; ++i) {
        const __m256i symbols = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i * b_count + u0));
        const __m256i values = _mm256_shuffle_epi8(rows[a[i * a_count + t]], symbols);
        acc_lo = _mm256_add_epi16(acc_lo, _mm256_cvtepi8_epi16(_mm256_castsi256_si128(values)));
        acc_hi = _mm256_add_epi16(acc_hi, _mm256_cvtepi8_epi16(_mm256_extracti128_si256(values, 1)));
      }
      _mm256_store_si256(reinterpret_cast<__m256i*>(sums), acc_lo);
      _mm256_store_si256(reinterpret_cast<__m256i*>(sums + 16), acc_hi);
      for (std::size_t k = 0; k < 32; ++k) {
        if (skip_equal_index && u0 + k == t) continue;
        ++histogram[sums[k] + offset];
      }
    }
    if (!tail.empty()) {
      std::fill(tail.begin(), tail.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::int8_t* row = kDoubledTraceTable[a[i * a_count + t]];
        const std::uint8_t* plane = b + i * b_count + vector_end;
        for (std::size_t k = 0; k < tail.size(); ++k) tail[k] += row[plane[k]];
      }
      for (std::size_t k = 0; k < tail.size(); ++k) {
        if (skip_equal_index && vector_end + k == t) continue;
        ++histogram[tail[k] + offset];
      }
    }
  }
}

namespace {

// (u * z) for two packed complex numbers, matching the scalar expression
// (ur*zr - ui*zi, ur*zi + ui*zr).
inline __m256d complex_scale(__m256d ur, __m256d ui, __m256d z) {
  const __m256d swapped = _mm256_permute_pd(z, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(ur, z), _mm256_mul_pd(ui, swapped));
}

}  // namespace

void apply_2x2(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u) {
  if (stride < 2) {
    scalar::apply_2x2(amplitudes, dim, stride, u);
    return;
  }
  const __m256d u00r = _mm256_set1_pd(u[0].real()), u00i = _mm256_set1_pd(u[0].imag());
  const __m256d u01r = _mm256_set1_pd(u[1].real()), u01i = _mm256_set1_pd(u[1].imag());
  const __m256d u10r = _mm256_set1_pd(u[2].real()), u10i = _mm256_set1_pd(u[2].imag());
  const __m256d u11r = _mm256_set1_pd(u[3].real()), u11i = _mm256_set1_pd(u[3].imag());
  auto* data = reinterpret_cast<double*>(amplitudes);
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t j = block; j < block + stride; j += 2) {
      double* pa = data + 2 * j;
      double* pb = data + 2 * (j + stride);
      const __m256d va = _mm256_loadu_pd(pa);
      const __m256d vb = _mm256_loadu_pd(pb);
      const __m256d out0 = _mm256_add_pd(complex_scale(u00r, u00i, va), complex_scale(u01r, u01i, vb));
      const __m256d out1 = _mm256_add_pd(complex_scale(u10r, u10i, va), complex_scale(u11r, u11i, vb));
      _mm256_storeu_pd(pa, out0);
      _mm256_storeu_pd(pb, out1);
    }
  }
}

}  // namespace shadowkit::simd::avx2

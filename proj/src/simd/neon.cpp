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

#include <arm_neon.h>

#include "shadowkit/simd.hpp"

namespace shadowkit::simd::neon {

namespace {
constexpr std::size_t kMaxQubitsInt16 = 3000;
}

void pair_histogram(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b, std::size_t b_count,
                    std::size_t n, bool skip_equal_index, std::uint64_t* histogram) {
  if (n > kMaxQubitsInt16) {
    scalar::pair_histogram(a, a_count, b, b_count, n, skip_equal_index, histogram);
    return;
  }
  int8x16_t rows[6];
  for (int s = 0; s < 6; ++s) {
    std::int8_t bytes[16] = {};
    for (int v = 0; v < 6; ++v) bytes[v] = kDoubledTraceTable[s][v];
    rows[s] = vld1q_s8(bytes);
  }
  const auto offset = static_cast<std::int32_t>(8 * n);
  const std::size_t vector_end = b_count - b_count % 16;
  std::int16_t sums[16];
  std::vector<std::int32_t> tail(b_count - vector_end);

  for (std::size_t t = 0; t < a_count; ++t) {
    for (std::size_t u0 = 0; u0 < vector_end; u0 += 16) {
      int16x8_t acc_lo = vdupq_n_s16(0);
      int16x8_t acc_hi = vdupq_n_s16(0);
      for (std::size_t i = 0; i < n; ++i) {
        const uint8x16_t symbols = vld1q_u8(b + i * b_count + u0);
        const int8x16_t values = vqtbl1q_s8(rows[a[i * a_count + t]], symbols);
        acc_lo = vaddw_s8(acc_lo, vget_low_s8(values));
        acc_hi = vaddw_s8(acc_hi, vget_high_s8(values));
      }
      vst1q_s16(sums, acc_lo);
      vst1q_s16(sums + 8, acc_hi);
      for (std::size_t k = 0; k < 16; ++k) {
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

void apply_2x2(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u) {
  // One complex<double> per 128-bit register; same operation order as scalar.
  auto* data = reinterpret_cast<double*>(amplitudes);
  const float64x2_t u00r = vdupq_n_f64(u[0].real()), u00i = vdupq_n_f64(u[0].imag());
  const float64x2_t u01r = vdupq_n_f64(u[1].real()), u01i = vdupq_n_f64(u[1].imag());
  const float64x2_t u10r = vdupq_n_f64(u[2].real()), u10i = vdupq_n_f64(u[2].imag());
  const float64x2_t u11r = vdupq_n_f64(u[3].real()), u11i = vdupq_n_f64(u[3].imag());
  const float64x2_t sign = {-1.0, 1.0};
  auto scale = [&](float64x2_t ur, float64x2_t ui, float64x2_t z) {
    const float64x2_t swapped = vextq_f64(z, z, 1);
    return vaddq_f64(vmulq_f64(ur, z), vmulq_f64(sign, vmulq_f64(ui, swapped)));
  };
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t j = block; j < block + stride; ++j) {
      double* pa = data + 2 * j;
      double* pb = data + 2 * (j + stride);
      const float64x2_t va = vld1q_f64(pa);
      const float64x2_t vb = vld1q_f64(pb);
      vst1q_f64(pa, vaddq_f64(scale(u00r, u00i, va), scale(u01r, u01i, vb)));
      vst1q_f64(pb, vaddq_f64(scale(u10r, u10i, va), scale(u11r, u11i, vb)));
    }
  }
}

}  // namespace shadowkit::simd::neon

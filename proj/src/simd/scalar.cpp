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

#include "shadowkit/simd.hpp"

namespace shadowkit::simd::scalar {

void pair_histogram(const std::uint8_t* a, std::size_t a_count, const std::uint8_t* b, std::size_t b_count,
                    std::size_t n, bool skip_equal_index, std::uint64_t* histogram) {
  std::vector<std::int32_t> acc(b_count);
  const auto offset = static_cast<std::int32_t>(8 * n);
  for (std::size_t t = 0; t < a_count; ++t) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int8_t* row = kDoubledTraceTable[a[i * a_count + t]];
      const std::uint8_t* plane = b + i * b_count;
      for (std::size_t u = 0; u < b_count; ++u) acc[u] += row[plane[u]];
    }
    for (std::size_t u = 0; u < b_count; ++u) {
      if (skip_equal_index && u == t) continue;
      ++histogram[acc[u] + offset];
    }
  }
}

void apply_2x2(Complex* amplitudes, std::size_t dim, std::size_t stride, const Complex* u) {
  const double u00r = u[0].real(), u00i = u[0].imag(), u01r = u[1].real(), u01i = u[1].imag();
  const double u10r = u[2].real(), u10i = u[2].imag(), u11r = u[3].real(), u11i = u[3].imag();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t j = block; j < block + stride; ++j) {
      const double ar = amplitudes[j].real(), ai = amplitudes[j].imag();
      const double br = amplitudes[j + stride].real(), bi = amplitudes[j + stride].imag();
      const double p0r = u00r * ar - u00i * ai, p0i = u00r * ai + u00i * ar;
      const double q0r = u01r * br - u01i * bi, q0i = u01r * bi + u01i * br;
      const double p1r = u10r * ar - u10i * ai, p1i = u10r * ai + u10i * ar;
      const double q1r = u11r * br - u11i * bi, q1i = u11r * bi + u11i * br;
      amplitudes[j] = Complex(p0r + q0r, p0i + q0i);
      amplitudes[j + stride] = Complex(p1r + q1r, p1i + q1i);
    }
  }
}

}  // namespace shadowkit::simd::scalar

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

#include <cmath>
#include <limits>
#include <numbers>

#include "shadowkit/error.hpp"
#include "shadowkit/kernels.hpp"
#include "shadowkit/simd.hpp"

namespace shadowkit::kernels {

namespace {

void check_pair(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b, bool exclude_equal_t) {
  if (a.num_qubits() != b.num_qubits() || a.num_snapshots() != b.num_snapshots()) {
    fail(ErrorCode::ShapeMismatch, "shadow kernel needs shadows of equal n and T");
  }
  if (a.num_snapshots() == 0 || a.num_qubits() == 0) fail(ErrorCode::EmptyShadow, "empty shadow");
  if (exclude_equal_t && a.num_snapshots() < 2) fail(ErrorCode::NeedTwoSnapshots, "t != t' needs T >= 2");
}

// (gamma / n) * sum_i tr for the sum stored in histogram bin `bin`.
double bin_argument(std::size_t bin, std::size_t n, double gamma) {
  const double doubled = static_cast<double>(static_cast<std::int64_t>(bin) - static_cast<std::int64_t>(8 * n));
  return gamma * doubled / (2.0 * static_cast<double>(n));
}

}  // namespace

double shadow_trace(shadows::SnapshotSymbol s, shadows::SnapshotSymbol t) {
  return 0.5 * simd::kDoubledTraceTable[static_cast<unsigned>(s)][static_cast<unsigned>(t)];
}

PairHistogram pair_histogram(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b,
                             bool exclude_equal_t) {
  check_pair(a, b, exclude_equal_t);
  const std::size_t n = a.num_qubits();
  const std::size_t T = a.num_snapshots();
  PairHistogram h;
  h.n = n;
  h.counts.assign(18 * n + 1, 0);
  simd::active().pair_histogram(a.planes().data(), T, b.planes().data(), T, n, exclude_equal_t, h.counts.data());
  h.pairs = exclude_equal_t ? T * (T - 1) : T * T;
  return h;
}

double ShadowKernelValue::value() const { return std::exp(log_value); }

ShadowKernelValue shadow_kernel(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b, double tau,
                                double gamma, bool exclude_equal_t) {
  if (!(tau > 0.0) || !(gamma > 0.0)) fail(ErrorCode::InvalidArgument, "tau and gamma must be positive");
  const PairHistogram h = pair_histogram(a, b, exclude_equal_t);
  // Ascending bin order fixes the summation order for every backend.
  double total = 0.0;
  for (std::size_t bin = 0; bin < h.counts.size(); ++bin) {
    if (h.counts[bin] == 0) continue;
    total += static_cast<double>(h.counts[bin]) * std::exp(bin_argument(bin, h.n, gamma));
  }
  return {tau * total / static_cast<double>(h.pairs)};
}

double finite_shadow_kernel(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b, double tau,
                            double gamma, std::size_t D, std::size_t R, bool exclude_equal_t) {
  if (!(tau > 0.0) || !(gamma > 0.0)) fail(ErrorCode::InvalidArgument, "tau and gamma must be positive");
  const PairHistogram h = pair_histogram(a, b, exclude_equal_t);
  long double inner = 0.0L;
  for (std::size_t bin = 0; bin < h.counts.size(); ++bin) {
    if (h.counts[bin] == 0) continue;
    const long double x = bin_argument(bin, h.n, gamma);
    long double term = 1.0L;
    long double partial = 1.0L;
    for (std::size_t r = 1; r <= R; ++r) {
      term *= x / static_cast<long double>(r);
      partial += term;
    }
    inner += static_cast<long double>(h.counts[bin]) * partial;
  }
  const long double y = static_cast<long double>(tau) * inner / static_cast<long double>(h.pairs);
  long double term = 1.0L;
  long double outer = 1.0L;
  for (std::size_t d = 1; d <= D; ++d) {
    term *= y / static_cast<long double>(d);
    outer += term;
  }
  return static_cast<double>(outer);
}

TruncationOrders truncation_orders(double tau, double gamma, double eta) {
  if (!(tau > 0.0) || !(gamma > 0.0) || !(eta > 0.0)) {
    fail(ErrorCode::InvalidArgument, "tau, gamma and eta must be positive");
  }
  const double e2 = std::exp(2.0);
  const double inner_bound = tau * std::exp(5.0 * gamma);
  const double d = e2 * inner_bound + std::log(1.0 / eta) - 1.0;
  const double r = 5.0 * e2 * gamma + inner_bound + std::log(tau / eta) - 1.0;
  return {static_cast<std::size_t>(std::ceil(std::max(0.0, d))), static_cast<std::size_t>(std::ceil(std::max(0.0, r)))};
}

}  // namespace shadowkit::kernels

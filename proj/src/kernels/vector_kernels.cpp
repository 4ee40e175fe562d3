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
#include <numbers>

#include "shadowkit/error.hpp"
#include "shadowkit/kernels.hpp"

namespace shadowkit::kernels {

namespace {

void same_length(std::span<const double> x, std::span<const double> y, std::size_t m) {
  if (x.size() != m || y.size() != m) {
    fail(ErrorCode::DimensionMismatch, "kernel inputs have length " + std::to_string(x.size()) + " and " +
                                           std::to_string(y.size()) + ", expected " + std::to_string(m));
  }
}

double dirichlet_1d(double delta, int cutoff) {
  double total = 1.0;
  for (int k = 1; k <= cutoff; ++k) total += 2.0 * std::cos(std::numbers::pi * k * delta);
  return total;
}

}  // namespace

double dirichlet_kernel(std::span<const double> x, std::span<const double> y, const WavevectorSet& wv) {
  same_length(x, y, wv.m);
  double total = 0.0;
  for (const auto& k : wv.vectors) {
    double phase = 0.0;
    for (std::size_t i = 0; i < wv.m; ++i) phase += k[i] * (x[i] - y[i]);
    total += std::cos(std::numbers::pi * phase);
  }
  return total;
}

double pairwise_dirichlet_kernel(std::span<const double> x, std::span<const double> y, int cutoff) {
  same_length(x, y, x.size());
  if (x.size() < 2) fail(ErrorCode::DimensionMismatch, "pairwise Dirichlet kernel needs m >= 2");
  if (cutoff < 0) fail(ErrorCode::InvalidArgument, "cutoff must be >= 0");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = dirichlet_1d(x[i] - y[i], cutoff);
    sum += d;
    sum_sq += d * d;
  }
  return sum * sum - sum_sq;
}

double pairwise_dirichlet_direct(std::span<const double> x, std::span<const double> y, int cutoff) {
  same_length(x, y, x.size());
  if (x.size() < 2) fail(ErrorCode::DimensionMismatch, "pairwise Dirichlet kernel needs m >= 2");
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      for (int ki = -cutoff; ki <= cutoff; ++ki) {
        for (int kj = -cutoff; kj <= cutoff; ++kj) {
          total += std::cos(std::numbers::pi * (ki * (x[i] - y[i]) + kj * (x[j] - y[j])));
        }
      }
    }
  }
  return total;
}

double gaussian_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
  same_length(x, y, x.size());
  if (!(gamma > 0.0)) fail(ErrorCode::InvalidArgument, "Gaussian gamma must be positive");
  double dist = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dist += (x[i] - y[i]) * (x[i] - y[i]);
  return std::exp(-gamma * dist);
}

double default_gamma(const std::vector<Point>& points) {
  if (points.size() < 2) fail(ErrorCode::DegenerateData, "default gamma needs at least two points");
  double total = 0.0;
  for (const auto& a : points) {
    for (const auto& b : points) {
      same_length(a, b, points.front().size());
      for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]) * (a[i] - b[i]);
    }
  }
  if (total <= 0.0) fail(ErrorCode::DegenerateData, "all points are identical");
  const auto n = static_cast<double>(points.size());
  return n * n / total;
}

VectorKernel::VectorKernel(KernelSpec spec, std::size_t m) : spec_(std::move(spec)), m_(m) {
  if (is_shadow_kernel(spec_)) fail(ErrorCode::InvalidArgument, "shadow kernels do not act on parameter vectors");
  if (const auto* d = std::get_if<DirichletSpec>(&spec_)) wavevectors_ = enumerate_wavevectors(m, d->cutoff);
  if (const auto* g = std::get_if<GaussianSpec>(&spec_)) {
    if (!(g->gamma > 0.0)) fail(ErrorCode::InvalidArgument, "Gaussian gamma unresolved; call resolve() first");
  }
}

double VectorKernel::operator()(std::span<const double> x, std::span<const double> y) const {
  if (std::holds_alternative<DirichletSpec>(spec_)) return dirichlet_kernel(x, y, wavevectors_);
  same_length(x, y, m_);
  if (const auto* p = std::get_if<PairwiseDirichletSpec>(&spec_)) return pairwise_dirichlet_kernel(x, y, p->cutoff);
  return gaussian_kernel(x, y, std::get<GaussianSpec>(spec_).gamma);
}

}  // namespace shadowkit::kernels

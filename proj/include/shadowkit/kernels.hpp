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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowkit/linalg.hpp"
#include "shadowkit/shadows.hpp"

namespace shadowkit::kernels {

using Point = std::vector<double>;

// Wavevectors ----------------------------------------------------------------

/// Integer vectors k in Z^m with ||k||_2 <= cutoff, in lexicographic order.
struct WavevectorSet {
  std::size_t m = 0;
  double cutoff = 0.0;
  std::vector<std::vector<int>> vectors;

  std::size_t size() const { return vectors.size(); }
};

inline constexpr std::size_t kDefaultWavevectorCap = 10'000'000;

/// (2m+1)^(cutoff^2), the a priori bound on the ball's lattice points.
double wavevector_count_bound(std::size_t m, double cutoff);

/// Depth-first lattice enumeration with residual-norm pruning. Throws
/// CountCapExceeded once more than `cap` vectors are found.
WavevectorSet enumerate_wavevectors(std::size_t m, double cutoff, std::size_t cap = kDefaultWavevectorCap);

// Kernels over parameter vectors ----------------------------------------------

/// sum_k cos(pi k.(x - y)).
double dirichlet_kernel(std::span<const double> x, std::span<const double> y, const WavevectorSet& wv);

/// sum over ordered pairs i != j of sum_{|k_i|,|k_j| <= cutoff}
/// cos(pi (k_i d_i + k_j d_j)), evaluated as (sum_i D_i)^2 - sum_i D_i^2 with
/// D_i = sum_{|k| <= cutoff} cos(pi k d_i).
double pairwise_dirichlet_kernel(std::span<const double> x, std::span<const double> y, int cutoff = 3);

/// The same double sum, term by term. Reference implementation for tests.
double pairwise_dirichlet_direct(std::span<const double> x, std::span<const double> y, int cutoff = 3);

double gaussian_kernel(std::span<const double> x, std::span<const double> y, double gamma);

/// N^2 / sum_i sum_j ||x_i - x_j||^2.
double default_gamma(const std::vector<Point>& points);

// Shadow kernels --------------------------------------------------------------

/// tr(sigma_s sigma_s') = 9 |<s|s'>|^2 - 4, one of {-4, 1/2, 5}.
double shadow_trace(shadows::SnapshotSymbol s, shadows::SnapshotSymbol t);

/// Histogram of per-pair doubled trace sums (bin v + 8n holds the number of
/// snapshot pairs whose sum_i 2 tr(...) equals v). The shared backbone of the
/// closed-form and finite kernels.
struct PairHistogram {
  std::size_t n = 0;
  std::uint64_t pairs = 0;
  std::vector<std::uint64_t> counts;
};

PairHistogram pair_histogram(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b,
                             bool exclude_equal_t);

struct ShadowKernelValue {
  /// (tau / Z) sum_{t,t'} exp((gamma / n) sum_i tr(...)).
  double log_value = 0.0;
  /// exp(log_value); +inf once log_value exceeds the double range.
  double value() const;
};

/// exp((tau/Z) sum_{t,t'} exp((gamma/n) sum_i tr(sigma_i^t sigma~_i^t'))),
/// Z = T^2, or T(T-1) over t != t' pairs when exclude_equal_t.
ShadowKernelValue shadow_kernel(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b, double tau,
                                double gamma, bool exclude_equal_t = false);

/// sum_{d<=D} (1/d!) ((tau/T^2) sum_{t,t'} sum_{r<=R} (1/r!) ((gamma/n) sum_i tr)^r)^d.
double finite_shadow_kernel(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b, double tau,
                            double gamma, std::size_t D, std::size_t R, bool exclude_equal_t = false);

struct TruncationOrders {
  std::size_t D = 0;
  std::size_t R = 0;
};

/// D = e^2 tau e^{5 gamma} + ln(1/eta) - 1 and
/// R = 5 e^2 gamma + tau e^{5 gamma} + ln(tau/eta) - 1, rounded up; these keep
/// the truncation error within 2 eta.
TruncationOrders truncation_orders(double tau, double gamma, double eta);

// Kernel specifications -------------------------------------------------------

struct DirichletSpec {
  double cutoff = 3.0;
};
struct PairwiseDirichletSpec {
  int cutoff = 3;
};
/// gamma <= 0 means "use default_gamma on the training points".
struct GaussianSpec {
  double gamma = 0.0;
};
struct ShadowSpec {
  double tau = 1.0;
  double gamma = 1.0;
  bool exclude_equal_t_on_diagonal = true;
};
struct FiniteShadowSpec {
  double tau = 1.0;
  double gamma = 1.0;
  std::size_t D = 16;
  std::size_t R = 16;
};

using KernelSpec = std::variant<DirichletSpec, PairwiseDirichletSpec, GaussianSpec, ShadowSpec, FiniteShadowSpec>;

std::string kernel_name(const KernelSpec& spec);
bool is_shadow_kernel(const KernelSpec& spec);
nlohmann::json to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const nlohmann::json& j);

/// Fixes data-dependent hyperparameters (the default Gaussian bandwidth).
KernelSpec resolve(const KernelSpec& spec, const std::vector<Point>& points);

/// Evaluates a parameter-vector kernel; wavevectors are enumerated once.
class VectorKernel {
 public:
  VectorKernel(KernelSpec spec, std::size_t m);

  double operator()(std::span<const double> x, std::span<const double> y) const;
  const KernelSpec& spec() const { return spec_; }
  std::size_t dimension() const { return m_; }

 private:
  KernelSpec spec_;
  std::size_t m_;
  WavevectorSet wavevectors_;
};

// Gram matrices ---------------------------------------------------------------

struct GramMatrix {
  RMatrix entries;
  /// Log-domain entries for shadow kernels (empty otherwise).
  RMatrix log_entries;
  bool standardized = false;
  nlohmann::json metadata;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

GramMatrix gram_matrix(const std::vector<Point>& points, const KernelSpec& spec);

/// Off-diagonal entries use all T^2 pairs; diagonal entries drop t = t'
/// when the KernelSpec asks for it.
GramMatrix gram_matrix(const std::vector<shadows::ClassicalShadow>& items, const KernelSpec& spec);

/// K_ij / sqrt(K_ii K_jj); computed from log entries when present.
GramMatrix standardize(const GramMatrix& gram);

/// k(queries[q], train[l]) for vector kernels.
RMatrix cross_gram(const std::vector<Point>& queries, const std::vector<Point>& train, const KernelSpec& spec);

/// Standardized cross-kernel rows for shadow kernels: each entry is divided
/// by the geometric mean of the two self-kernels (self-kernels follow the
/// diagonal convention of the KernelSpec).
RMatrix standardized_cross_gram(const std::vector<shadows::ClassicalShadow>& queries,
                                const std::vector<shadows::ClassicalShadow>& train, const KernelSpec& spec);

/// Row-major doubles after a little-endian u64 N header.
void write_gram(const std::string& path, const GramMatrix& gram);
GramMatrix read_gram(const std::string& path);

}  // namespace shadowkit::kernels

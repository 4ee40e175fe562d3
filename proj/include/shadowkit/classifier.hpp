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
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowkit/linalg.hpp"

namespace shadowkit::classifier {

// Support vector machine ------------------------------------------------------

struct SVMOptions {
  double lambda_sq = 1.0;
  /// Stop once the hinge objective is at or below this value.
  double tol = 1e-3;
  std::size_t max_iter = 20000;
};

struct SVMModel {
  RVector alpha;
  double lambda_sq = 0.0;
  /// sum_l max(0, 1 - y_l (K alpha)_l) at the returned (best) iterate.
  double training_error = 0.0;
  /// Number of training points with sign(score) != label.
  std::size_t misclassified = 0;
  std::size_t iterations = 0;
  /// False when max_iter was reached before tol; the best iterate is kept.
  bool converged = false;
  std::string kernel_hash;
};

/// min_alpha sum_l max(0, 1 - y_l (K alpha)_l) s.t. alpha^T K alpha <= lambda_sq,
/// by projected subgradient steps measured in the feature-space norm.
SVMModel svm_train(const RMatrix& gram, const std::vector<int>& labels, const SVMOptions& options = {});

struct SVMPrediction {
  int label = 1;
  double score = 0.0;
};

/// score = <alpha, kernel_row>; label = sign(score) with sign(0) = +1.
SVMPrediction svm_predict(const SVMModel& model, std::span<const double> kernel_row);

/// training_error / N + 7 (Lambda R + 1) sqrt(log(2/delta) / N), R^2 = max_l K_ll.
double svm_error_bound(double training_error, std::size_t n, double lambda_sq, double radius, double delta);

nlohmann::json to_json(const SVMModel& model);
SVMModel svm_from_json(const nlohmann::json& j);

// Kernel PCA -----------------------------------------------------------------

inline constexpr double kEigenClip = 1e-8;

struct PCAEmbedding {
  std::size_t num_components = 0;
  RMatrix coordinates;  // N x num_components
  RVector eigenvalues;  // nonincreasing, all N values
};

/// Double-centers the standardized Gram (unless center = false),
/// eigendecomposes, and returns v_k sqrt(lambda_k) per component with the
/// largest-magnitude coordinate made positive.
PCAEmbedding kernel_pca(const RMatrix& standardized_gram, std::size_t num_components, bool center = true);

// Unsupervised split ----------------------------------------------------------

inline constexpr std::size_t kDefaultSplitComponents = 6;
inline constexpr std::size_t kDefaultSplitTrials = 500;

struct SplitResult {
  std::vector<int> labels;
  double score = 0.0;
  std::vector<double> direction;
  std::size_t best_trial = 0;
};

/// Projects the first `components` coordinates onto random unit directions,
/// splits each projection at its median (ties and the odd median point go to
/// +1), and keeps the direction with the largest sum |p - median|.
SplitResult unsupervised_split(const PCAEmbedding& embedding, std::size_t trials, std::uint64_t seed,
                               std::size_t components = kDefaultSplitComponents);

/// Fraction of positions where a == b, maximized over a global relabeling.
double agreement_up_to_sign(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace shadowkit::classifier

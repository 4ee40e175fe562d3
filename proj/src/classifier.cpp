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

#include "shadowkit/classifier.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "shadowkit/error.hpp"
#include "shadowkit/random.hpp"

namespace shadowkit::classifier {

namespace {

double hinge(const RVector& scores, const std::vector<int>& labels) {
  double total = 0.0;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    total += std::max(0.0, 1.0 - labels[l] * scores[static_cast<Eigen::Index>(l)]);
  }
  return total;
}

std::size_t misclassified(const RVector& scores, const std::vector<int>& labels) {
  std::size_t wrong = 0;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    const int predicted = scores[static_cast<Eigen::Index>(l)] >= 0.0 ? 1 : -1;
    if (predicted != labels[l]) ++wrong;
  }
  return wrong;
}

}  // namespace

SVMModel svm_train(const RMatrix& gram, const std::vector<int>& labels, const SVMOptions& options) {
  const auto n = gram.rows();
  if (gram.cols() != n) fail(ErrorCode::ShapeMismatch, "Gram matrix must be square");
  if (static_cast<std::size_t>(n) != labels.size()) fail(ErrorCode::LengthMismatch, "one label per Gram row");
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty training set");
  for (int y : labels) {
    if (y != 1 && y != -1) fail(ErrorCode::InvalidArgument, "labels must be +1 or -1");
  }
  if (!(options.lambda_sq >= 0.0)) fail(ErrorCode::InvalidArgument, "lambda_sq must be >= 0");

  SVMModel model;
  model.lambda_sq = options.lambda_sq;
  model.alpha = RVector::Zero(n);
  RVector scores = RVector::Zero(n);
  model.training_error = hinge(scores, labels);
  model.misclassified = misclassified(scores, labels);
  if (model.training_error <= options.tol) {
    model.converged = true;
    return model;
  }
  if (options.lambda_sq == 0.0) return model;

  const double radius = std::sqrt(options.lambda_sq);
  RVector alpha = RVector::Zero(n);
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    model.iterations = iter;
    RVector direction = RVector::Zero(n);
    for (Eigen::Index l = 0; l < n; ++l) {
      if (labels[static_cast<std::size_t>(l)] * scores[l] < 1.0) direction[l] = labels[static_cast<std::size_t>(l)];
    }
    const double feature_norm_sq = direction.dot(gram * direction);
    if (!(feature_norm_sq > 0.0)) break;
    const double step = radius / (std::sqrt(feature_norm_sq) * std::sqrt(static_cast<double>(iter)));
    alpha += step * direction;
    scores = gram * alpha;
    const double norm_sq = alpha.dot(scores);
    if (norm_sq > options.lambda_sq) {
      const double shrink = radius / std::sqrt(norm_sq);
      alpha *= shrink;
      scores *= shrink;
    }
    const double objective = hinge(scores, labels);
    if (objective < model.training_error) {
      model.alpha = alpha;
      model.training_error = objective;
      model.misclassified = misclassified(scores, labels);
    }
    if (model.training_error <= options.tol) {
      model.converged = true;
      break;
    }
  }
  return model;
}

SVMPrediction svm_predict(const SVMModel& model, std::span<const double> kernel_row) {
  if (kernel_row.size() != static_cast<std::size_t>(model.alpha.size())) {
    fail(ErrorCode::LengthMismatch, "kernel row has " + std::to_string(kernel_row.size()) + " entries, model has " +
                                        std::to_string(model.alpha.size()));
  }
  double score = 0.0;
  for (std::size_t l = 0; l < kernel_row.size(); ++l) score += model.alpha[static_cast<Eigen::Index>(l)] * kernel_row[l];
  return {score >= 0.0 ? 1 : -1, score};
}

double svm_error_bound(double training_error, std::size_t n, double lambda_sq, double radius, double delta) {
  if (n == 0 || !(delta > 0.0 && delta < 1.0)) fail(ErrorCode::InvalidArgument, "bound needs N > 0, delta in (0,1)");
  const double big_n = static_cast<double>(n);
  return training_error / big_n +
         7.0 * (std::sqrt(lambda_sq) * radius + 1.0) * std::sqrt(std::log(2.0 / delta) / big_n);
}

nlohmann::json to_json(const SVMModel& model) {
  std::vector<double> alpha(model.alpha.data(), model.alpha.data() + model.alpha.size());
  return {{"alpha", alpha},
          {"lambda_sq", model.lambda_sq},
          {"training_error", model.training_error},
          {"misclassified", model.misclassified},
          {"iterations", model.iterations},
          {"converged", model.converged},
          {"kernel_hash", model.kernel_hash}};
}

SVMModel svm_from_json(const nlohmann::json& j) {
  SVMModel model;
  const auto alpha = j.at("alpha").get<std::vector<double>>();
  model.alpha = Eigen::Map<const RVector>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
  model.lambda_sq = j.at("lambda_sq").get<double>();
  model.training_error = j.value("training_error", 0.0);
  model.misclassified = j.value("misclassified", std::size_t{0});
  model.iterations = j.value("iterations", std::size_t{0});
  model.converged = j.value("converged", false);
  model.kernel_hash = j.value("kernel_hash", std::string());
  return model;
}

PCAEmbedding kernel_pca(const RMatrix& gram, std::size_t num_components, bool center) {
  const auto n = gram.rows();
  if (gram.cols() != n || n == 0) fail(ErrorCode::ShapeMismatch, "kernel PCA needs a nonempty square matrix");
  if (num_components > static_cast<std::size_t>(n)) fail(ErrorCode::InvalidArgument, "more components than points");
  RMatrix k = 0.5 * (gram + gram.transpose());
  if (center) {
    const RVector row_mean = k.rowwise().mean();
    const RVector col_mean = k.colwise().mean().transpose();
    const double total_mean = k.mean();
    k = (k.colwise() - row_mean).eval();
    k = (k.rowwise() - col_mean.transpose()).eval();
    k.array() += total_mean;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(k);
  if (solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "kernel PCA eigensolver failed");

  PCAEmbedding out;
  out.num_components = num_components;
  out.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double value = solver.eigenvalues()[n - 1 - i];
    if (value < 0.0 && value >= -kEigenClip) value = 0.0;
    out.eigenvalues[i] = value;
  }
  out.coordinates = RMatrix::Zero(n, static_cast<Eigen::Index>(num_components));
  for (std::size_t c = 0; c < num_components; ++c) {
    const auto idx = static_cast<Eigen::Index>(c);
    const double scale = std::sqrt(std::max(0.0, out.eigenvalues[idx]));
    RVector coords = solver.eigenvectors().col(n - 1 - idx) * scale;
    Eigen::Index peak = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(coords[i]) > std::abs(coords[peak]) + 1e-12) peak = i;
    }
    if (coords[peak] < 0.0) coords = -coords;
    out.coordinates.col(idx) = coords;
  }
  return out;
}

SplitResult unsupervised_split(const PCAEmbedding& embedding, std::size_t trials, std::uint64_t seed,
                               std::size_t components) {
  if (trials == 0) fail(ErrorCode::InvalidArgument, "need at least one trial");
  const auto n = embedding.coordinates.rows();
  const auto dims = static_cast<Eigen::Index>(std::min<std::size_t>(components, embedding.coordinates.cols()));
  if (n == 0 || dims == 0) fail(ErrorCode::DegenerateEmbedding, "embedding has no points or components");
  const RMatrix coords = embedding.coordinates.leftCols(dims);
  bool all_equal = true;
  for (Eigen::Index i = 1; i < n && all_equal; ++i) {
    if ((coords.row(i) - coords.row(0)).cwiseAbs().maxCoeff() > 1e-12) all_equal = false;
  }
  if (all_equal) fail(ErrorCode::DegenerateEmbedding, "all embedded points coincide");

  SplitResult best;
  best.score = -1.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, trial);
    RVector direction(dims);
    double norm = 0.0;
    while (norm == 0.0) {
      for (Eigen::Index d = 0; d < dims; ++d) direction[d] = rng.normal();
      norm = direction.norm();
    }
    direction /= norm;
    const RVector projection = coords * direction;
    std::vector<double> sorted(projection.data(), projection.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const auto half = static_cast<std::size_t>(n / 2);
    const double median = n % 2 == 1 ? sorted[half] : 0.5 * (sorted[half - 1] + sorted[half]);
    const double score = (projection.array() - median).abs().sum();
    if (score > best.score) {
      best.score = score;
      best.best_trial = trial;
      best.direction.assign(direction.data(), direction.data() + dims);
      best.labels.resize(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) best.labels[static_cast<std::size_t>(i)] = projection[i] >= median ? 1 : -1;
    }
  }
  return best;
}

double agreement_up_to_sign(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "label vectors differ in length");
  if (a.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
  const double frac = static_cast<double>(same) / static_cast<double>(a.size());
  return std::max(frac, 1.0 - frac);
}

}  // namespace shadowkit::classifier

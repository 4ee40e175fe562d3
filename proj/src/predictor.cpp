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

#include "shadowkit/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shadowkit/error.hpp"
#include "shadowkit/random.hpp"

namespace shadowkit::predictor {

namespace {

class Fnv {
 public:
  void bytes(const void* data, std::size_t count) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < count; ++k) {
      h_ ^= p[k];
      h_ *= 0x100000001b3ull;
    }
  }
  void value(double v) { bytes(&v, sizeof(v)); }
  void value(std::uint64_t v) { bytes(&v, sizeof(v)); }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

void check_point(std::span<const double> x, std::size_t m) {
  if (x.size() != m) {
    fail(ErrorCode::DimensionMismatch, "parameter vector has length " + std::to_string(x.size()) + ", expected " +
                                           std::to_string(m));
  }
  for (double v : x) {
    if (!(v >= -1.0 && v <= 1.0)) fail(ErrorCode::InvalidArgument, "parameter outside [-1, 1]");
  }
}

}  // namespace

std::string observable_id(const Observable& observable) {
  Fnv h;
  h.value(static_cast<std::uint64_t>(observable.size()));
  for (const auto& term : observable) {
    h.value(term.coefficient);
    h.value(static_cast<std::uint64_t>(term.factors.size()));
    for (const auto& [site, factor] : term.factors) {
      h.value(static_cast<std::uint64_t>(site));
      for (int k = 0; k < 4; ++k) {
        h.value(factor(k / 2, k % 2).real());
        h.value(factor(k / 2, k % 2).imag());
      }
    }
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h.digest()));
  return buffer;
}

TrainingSet::TrainingSet(std::size_t m, std::vector<Record> records)
    : m_(m), records_(std::move(records)), cache_(std::make_shared<Cache>()) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "parameter dimension must be positive");
  for (const auto& r : records_) {
    check_point(r.x, m);
    const auto& first = records_.front().shadow;
    if (r.shadow.num_qubits() != first.num_qubits() || r.shadow.num_snapshots() != first.num_snapshots()) {
      fail(ErrorCode::ShapeMismatch, "training shadows differ in n or T");
    }
  }
}

std::vector<kernels::Point> TrainingSet::points() const {
  std::vector<kernels::Point> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.x);
  return out;
}

std::shared_ptr<const RVector> TrainingSet::estimates(const Observable& observable) const {
  const std::string id = observable_id(observable);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->values.find(id);
    if (it != cache_->values.end()) return it->second;
  }
  auto values = std::make_shared<RVector>(static_cast<Eigen::Index>(records_.size()));
  parallel_for(records_.size(), [&](std::size_t l) {
    (*values)[static_cast<Eigen::Index>(l)] = shadows::estimate_observable_sum(records_[l].shadow, observable);
  });
  std::lock_guard<std::mutex> lock(cache_->mutex);
  // First writer wins; a concurrent duplicate computed identical values.
  auto [it, inserted] = cache_->values.emplace(id, std::move(values));
  return it->second;
}

double PredictionModel::normalized_kernel(std::span<const double> x, std::span<const double> y) const {
  const double kxy = (*evaluator_)(x, y);
  const double kxx = (*evaluator_)(x, x);
  const double kyy = (*evaluator_)(y, y);
  return kxy / std::sqrt(kxx * kyy);
}

RVector PredictionModel::weights(std::span<const double> x) const {
  const auto& records = data_->records();
  check_point(x, data_->m());
  const auto n = static_cast<Eigen::Index>(records.size());
  RVector k(n);
  if (kind_ == ModelKind::DirichletAverage) {
    for (Eigen::Index l = 0; l < n; ++l) {
      k[l] = kernels::dirichlet_kernel(x, records[static_cast<std::size_t>(l)].x, wavevectors_);
    }
    return k / static_cast<double>(n);
  }
  for (Eigen::Index l = 0; l < n; ++l) k[l] = normalized_kernel(x, records[static_cast<std::size_t>(l)].x);
  return factor_->solve(k);
}

RMatrix PredictionModel::weight_matrix(const std::vector<kernels::Point>& queries) const {
  RMatrix out(static_cast<Eigen::Index>(queries.size()), static_cast<Eigen::Index>(data_->size()));
  parallel_for(queries.size(), [&](std::size_t q) { out.row(static_cast<Eigen::Index>(q)) = weights(queries[q]).transpose(); });
  return out;
}

double PredictionModel::predict(std::span<const double> x, const Observable& observable) const {
  if (observable.empty()) {
    check_point(x, data_->m());
    return 0.0;
  }
  return weights(x).dot(*data_->estimates(observable));
}

double PredictionModel::factorization_residual() const {
  if (kind_ != ModelKind::KernelRidge) return 0.0;
  const RVector probe = RVector::Ones(regularized_.rows());
  const RVector solved = factor_->solve(probe);
  return (regularized_ * solved - probe).norm() / probe.norm();
}

PredictionModel train_dirichlet(std::shared_ptr<const TrainingSet> data, double cutoff) {
  if (!data || data->size() == 0) fail(ErrorCode::InvalidArgument, "training set is empty");
  PredictionModel model;
  model.kind_ = ModelKind::DirichletAverage;
  model.data_ = std::move(data);
  model.kernel_ = kernels::DirichletSpec{cutoff};
  model.wavevectors_ = kernels::enumerate_wavevectors(model.data_->m(), cutoff);
  return model;
}

PredictionModel train_ridge(std::shared_ptr<const TrainingSet> data, const kernels::KernelSpec& kernel,
                            double lambda) {
  if (!data || data->size() == 0) fail(ErrorCode::InvalidArgument, "training set is empty");
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "ridge lambda must be positive");
  if (kernels::is_shadow_kernel(kernel)) fail(ErrorCode::InvalidArgument, "ridge regression acts on parameter kernels");
  PredictionModel model;
  model.kind_ = ModelKind::KernelRidge;
  model.data_ = std::move(data);
  const auto points = model.data_->points();
  model.kernel_ = kernels::resolve(kernel, points);
  model.evaluator_ = std::make_shared<kernels::VectorKernel>(model.kernel_, model.data_->m());
  model.lambda_ = lambda;

  const auto n = static_cast<Eigen::Index>(points.size());
  RMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = model.normalized_kernel(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  const double jitter = 1e-10 * gram.trace() / static_cast<double>(n);
  for (double lam : {lambda, lambda + jitter}) {
    RMatrix regularized = gram;
    regularized.diagonal().array() += lam;
    auto factor = std::make_shared<Eigen::LLT<RMatrix>>(regularized);
    if (factor->info() != Eigen::Success) continue;
    model.effective_lambda_ = lam;
    model.regularized_ = std::move(regularized);
    model.factor_ = std::move(factor);
    if (model.factorization_residual() <= 1e-8) return model;
  }
  fail(ErrorCode::FactorizationFailure, "K + lambda I is not numerically positive definite (lambda=" +
                                            std::to_string(lambda) + ")");
}

double predict_property(const PredictionModel& model, std::span<const double> x, const Observable& observable) {
  return model.predict(x, observable);
}

double rmse(std::span<const double> predictions, std::span<const double> truths) {
  if (predictions.size() != truths.size()) fail(ErrorCode::LengthMismatch, "rmse inputs differ in length");
  if (predictions.empty()) fail(ErrorCode::InvalidArgument, "rmse of empty vectors");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - truths[i];
    total += d * d;
  }
  return std::sqrt(total / static_cast<double>(predictions.size()));
}

double rmse(const RVector& predictions, const RVector& truths) {
  return rmse(std::span<const double>(predictions.data(), static_cast<std::size_t>(predictions.size())),
              std::span<const double>(truths.data(), static_cast<std::size_t>(truths.size())));
}

SelectionReport model_select(std::shared_ptr<const TrainingSet> train, const TrainingSet& validation,
                             const std::vector<Observable>& observables, const std::vector<double>& lambda_grid,
                             const std::vector<kernels::KernelSpec>& kernel_candidates,
                             const RMatrix* validation_truth) {
  if (lambda_grid.empty() || kernel_candidates.empty()) fail(ErrorCode::InvalidArgument, "empty candidate grid");
  if (validation.size() == 0) fail(ErrorCode::InvalidArgument, "validation set is empty");
  if (validation_truth != nullptr &&
      (validation_truth->rows() != static_cast<Eigen::Index>(validation.size()) ||
       validation_truth->cols() != static_cast<Eigen::Index>(observables.size()))) {
    fail(ErrorCode::ShapeMismatch, "validation truth must be N_validation x observables");
  }
  SelectionReport report;
  for (const auto& v : validation.records()) {
    for (const auto& t : train->records()) {
      if (v.x == t.x && v.shadow == t.shadow) {
        ++report.overlapping_records;
        break;
      }
    }
  }

  // Candidate order encodes the tie rule: smaller lambda first, then kernel order.
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (lambda index, kernel index)
  std::vector<std::size_t> lambda_rank(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) lambda_rank[i] = i;
  std::stable_sort(lambda_rank.begin(), lambda_rank.end(),
                   [&](std::size_t a, std::size_t b) { return lambda_grid[a] < lambda_grid[b]; });
  for (std::size_t li : lambda_rank) {
    for (std::size_t k = 0; k < kernel_candidates.size(); ++k) order.emplace_back(li, k);
  }

  const auto queries = validation.points();
  std::vector<RVector> targets;
  for (std::size_t o = 0; o < observables.size(); ++o) {
    targets.push_back(validation_truth ? RVector(validation_truth->col(static_cast<Eigen::Index>(o)))
                                       : RVector(*validation.estimates(observables[o])));
  }
  report.selections.resize(observables.size());
  for (std::size_t o = 0; o < observables.size(); ++o) {
    report.selections[o].observable_id = observable_id(observables[o]);
    report.selections[o].validation_rmse = std::numeric_limits<double>::infinity();
  }
  for (const auto& [li, k] : order) {
    auto model = std::make_shared<const PredictionModel>(train_ridge(train, kernel_candidates[k], lambda_grid[li]));
    const RMatrix w = model->weight_matrix(queries);
    for (std::size_t o = 0; o < observables.size(); ++o) {
      const RVector predictions = w * *train->estimates(observables[o]);
      const double err = rmse(predictions, targets[o]);
      auto& best = report.selections[o];
      if (err < best.validation_rmse) {
        best.kernel_index = k;
        best.lambda = lambda_grid[li];
        best.validation_rmse = err;
        best.model = model;
      }
    }
  }
  return report;
}

Split split_indices(std::size_t n, std::size_t n_train, std::size_t n_validation, std::uint64_t seed) {
  if (n_train + n_validation > n) fail(ErrorCode::InvalidArgument, "split sizes exceed the record count");
  const auto perm = seeded_permutation(n, seed);
  Split split;
  split.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.validation.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train),
                          perm.begin() + static_cast<std::ptrdiff_t>(n_train + n_validation));
  split.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train + n_validation), perm.end());
  return split;
}

}  // namespace shadowkit::predictor

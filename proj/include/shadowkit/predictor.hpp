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
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "shadowkit/kernels.hpp"
#include "shadowkit/shadows.hpp"

namespace shadowkit::predictor {

using Observable = std::vector<shadows::ProductTerm>;

/// Canonical id: hex digest of the sorted (site, matrix, coefficient) data.
std::string observable_id(const Observable& observable);

struct Record {
  kernels::Point x;
  shadows::ClassicalShadow shadow;
};

/// Parameter points with one shadow each. Per-record observable estimates
/// are computed on first use and cached under observable_id; the cache is
/// write-once per key and shared between copies.
class TrainingSet {
 public:
  TrainingSet(std::size_t m, std::vector<Record> records);

  std::size_t m() const { return m_; }
  std::size_t size() const { return records_.size(); }
  const Record& record(std::size_t i) const { return records_[i]; }
  const std::vector<Record>& records() const { return records_; }
  std::vector<kernels::Point> points() const;

  /// Tr(O sigma_T(x_l)) for every record.
  std::shared_ptr<const RVector> estimates(const Observable& observable) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const RVector>> values;
  };

  std::size_t m_ = 0;
  std::vector<Record> records_;
  std::shared_ptr<Cache> cache_;
};

enum class ModelKind { DirichletAverage, KernelRidge };

/// Immutable trained predictor.
class PredictionModel {
 public:
  ModelKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  /// lambda plus any jitter added to rescue the factorization.
  double effective_lambda() const { return effective_lambda_; }
  const kernels::KernelSpec& kernel() const { return kernel_; }
  const TrainingSet& data() const { return *data_; }
  std::size_t num_wavevectors() const { return wavevectors_.size(); }

  /// kappa(x, x_l) for every training record: (1/N) Dirichlet weights, or
  /// k(x)^T (K + lambda I)^{-1} for ridge.
  RVector weights(std::span<const double> x) const;
  /// Weight rows for many queries at once.
  RMatrix weight_matrix(const std::vector<kernels::Point>& queries) const;

  double predict(std::span<const double> x, const Observable& observable) const;

  /// Relative residual of the stored factorization on a probe vector.
  double factorization_residual() const;

  friend PredictionModel train_dirichlet(std::shared_ptr<const TrainingSet> data, double cutoff);
  friend PredictionModel train_ridge(std::shared_ptr<const TrainingSet> data, const kernels::KernelSpec& kernel,
                                     double lambda);

 private:
  double normalized_kernel(std::span<const double> x, std::span<const double> y) const;

  ModelKind kind_ = ModelKind::DirichletAverage;
  std::shared_ptr<const TrainingSet> data_;
  kernels::KernelSpec kernel_;
  std::shared_ptr<const kernels::VectorKernel> evaluator_;
  kernels::WavevectorSet wavevectors_;
  double lambda_ = 0.0;
  double effective_lambda_ = 0.0;
  RMatrix regularized_;  // K + lambda I, kept for residual checks
  std::shared_ptr<const Eigen::LLT<RMatrix>> factor_;
};

/// sigma_N(x) = (1/N) sum_l kappa(x, x_l) sigma_T(x_l) with the l2-Dirichlet
/// kernel of the given cutoff.
PredictionModel train_dirichlet(std::shared_ptr<const TrainingSet> data, double cutoff);

/// Kernel ridge regression on the normalized kernel k / sqrt(k(x,x) k(y,y)).
/// Factorizes K + lambda I once; on failure retries with
/// lambda + 1e-10 tr(K)/N, then throws FactorizationFailure.
PredictionModel train_ridge(std::shared_ptr<const TrainingSet> data, const kernels::KernelSpec& kernel,
                            double lambda);

/// sum_l kappa(x, x_l) Tr(O sigma_T(x_l)).
double predict_property(const PredictionModel& model, std::span<const double> x, const Observable& observable);

inline const std::vector<double> kDefaultLambdaGrid = {0.0125, 0.025, 0.05, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

struct Selection {
  std::string observable_id;
  std::size_t kernel_index = 0;
  double lambda = 0.0;
  double validation_rmse = 0.0;
  std::shared_ptr<const PredictionModel> model;
};

struct SelectionReport {
  std::vector<Selection> selections;  // one per observable, input order
  /// Validation records that coincide with a training record.
  std::size_t overlapping_records = 0;
};

/// Per-observable argmin of validation RMSE against the validation shadows'
/// own estimates (or `validation_truth` when given, one column per
/// observable). Ties go to the smaller lambda, then the earlier kernel.
SelectionReport model_select(std::shared_ptr<const TrainingSet> train, const TrainingSet& validation,
                             const std::vector<Observable>& observables, const std::vector<double>& lambda_grid,
                             const std::vector<kernels::KernelSpec>& kernel_candidates,
                             const RMatrix* validation_truth = nullptr);

double rmse(std::span<const double> predictions, std::span<const double> truths);
double rmse(const RVector& predictions, const RVector& truths);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Seeded random partition of [0, n) into consecutive slices of a permutation.
Split split_indices(std::size_t n, std::size_t n_train, std::size_t n_validation, std::uint64_t seed);

}  // namespace shadowkit::predictor

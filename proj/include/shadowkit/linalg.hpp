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

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace shadowkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using SparseCMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Dense density matrix on a small subsystem. Reconstructions from shadows
/// are Hermitian with unit trace but need not be positive semidefinite.
struct DensityMatrix {
  CMatrix matrix;

  Eigen::Index dim() const { return matrix.rows(); }
  Complex trace() const { return matrix.trace(); }
};

/// Largest entry of |M - M^dagger|.
double hermiticity_error(const CMatrix& m);

/// Schatten-1 norm of a Hermitian matrix (sum of |eigenvalues|).
double trace_norm(const CMatrix& hermitian);

/// ||a - b||_1 for Hermitian a, b.
double trace_norm_distance(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Clip negative eigenvalues and renormalize to unit trace.
DensityMatrix psd_project(const DensityMatrix& rho);

/// Partial trace of a density matrix over the trailing subsystem of
/// dimension `traced_dim`; the kept factor has dim = rows / traced_dim.
CMatrix trace_out_last(const CMatrix& rho, Eigen::Index traced_dim);

/// Partial trace over the leading subsystem of dimension `traced_dim`.
CMatrix trace_out_first(const CMatrix& rho, Eigen::Index traced_dim);

// Parallelism ---------------------------------------------------------------

/// Global cap on worker threads; 0 means hardware concurrency.
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for i in [0, count) on up to max_threads() workers. Work is
/// split into contiguous static chunks, so any per-index output written by
/// body is independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace shadowkit

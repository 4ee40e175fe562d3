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

#include "shadowkit/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace shadowkit {

double hermiticity_error(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_norm(const CMatrix& hermitian) {
  const CMatrix sym = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm_distance(const CMatrix& a, const CMatrix& b) { return trace_norm(a - b); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix psd_project(const DensityMatrix& rho) {
  const CMatrix sym = 0.5 * (rho.matrix + rho.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  RVector evals = solver.eigenvalues().cwiseMax(0.0);
  const double total = evals.sum();
  if (total <= 0.0) {
    const auto d = rho.matrix.rows();
    return {CMatrix::Identity(d, d) / static_cast<double>(d)};
  }
  evals /= total;
  const CMatrix& v = solver.eigenvectors();
  return {v * evals.cast<Complex>().asDiagonal() * v.adjoint()};
}

CMatrix trace_out_last(const CMatrix& rho, Eigen::Index traced_dim) {
  const Eigen::Index keep = rho.rows() / traced_dim;
  CMatrix out = CMatrix::Zero(keep, keep);
  for (Eigen::Index a = 0; a < keep; ++a) {
    for (Eigen::Index b = 0; b < keep; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index e = 0; e < traced_dim; ++e) acc += rho(a * traced_dim + e, b * traced_dim + e);
      out(a, b) = acc;
    }
  }
  return out;
}

CMatrix trace_out_first(const CMatrix& rho, Eigen::Index traced_dim) {
  const Eigen::Index keep = rho.rows() / traced_dim;
  CMatrix out = CMatrix::Zero(keep, keep);
  for (Eigen::Index e = 0; e < traced_dim; ++e) out += rho.block(e * keep, e * keep, keep, keep);
  return out;
}

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned threads) { g_max_threads.store(threads); }

unsigned max_threads() {
  const unsigned configured = g_max_threads.load();
  if (configured != 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
// Nested calls from inside a worker run serially on that worker.
thread_local bool in_worker = false;
}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = in_worker ? 1 : std::min<std::size_t>(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      in_worker = true;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace shadowkit

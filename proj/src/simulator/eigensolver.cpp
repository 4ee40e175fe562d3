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

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "shadowkit/error.hpp"
#include "shadowkit/random.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::simulator {

namespace {

constexpr std::uint64_t kStartSeed = 0x6c616e637a6f7331ull;

void project_out(CVector& v, const std::vector<CVector>& basis) {
  for (const auto& q : basis) v -= q * q.dot(v);
}

CVector start_vector(std::size_t dim, std::uint64_t stream, const std::vector<CVector>& deflate) {
  CounterRng rng(kStartSeed, stream);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    v[k] = Complex(re, im);
  }
  project_out(v, deflate);
  project_out(v, deflate);
  v.normalize();
  return v;
}

double residual_norm(const SparseCMatrix& h, const CVector& v, double value) {
  return (h * v - value * v).norm();
}

StateVector wrap(const HamiltonianSpec& spec, CVector v) {
  // Fix the global phase: largest-magnitude amplitude real and positive.
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    if (std::abs(v[k]) > std::abs(v[best]) + 1e-12) best = k;
  }
  if (std::abs(v[best]) > 0.0) v *= std::conj(v[best]) / std::abs(v[best]);
  v.normalize();
  return StateVector{spec.n, spec.local_dim, std::move(v)};
}

struct DenseSpectrum {
  RVector values;
  CMatrix vectors;
};

DenseSpectrum dense_spectrum(const SparseCMatrix& h) {
  CMatrix dense(h);
  dense = 0.5 * (dense + dense.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(dense);
  if (solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

Eigenpair lanczos_lowest(const SparseCMatrix& h, const std::vector<CVector>& deflate,
                         const GroundStateOptions& options) {
  const auto dim = static_cast<std::size_t>(h.rows());
  if (deflate.size() >= dim) fail(ErrorCode::InvalidArgument, "deflation space fills the whole Hilbert space");
  const std::size_t m = std::max<std::size_t>(2, std::min(options.krylov_dim, dim - deflate.size()));
  const double scale = std::max(norm_estimate(h), std::numeric_limits<double>::min());
  const double tol = options.residual_tol * scale;

  CVector v = start_vector(dim, deflate.size(), deflate);
  CMatrix basis(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(m));
  Eigenpair best;
  best.residual = std::numeric_limits<double>::infinity();

  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = v;
    std::size_t steps = 0;
    for (std::size_t j = 0; j < m; ++j) {
      CVector w = h * basis.col(static_cast<Eigen::Index>(j));
      project_out(w, deflate);
      alpha.push_back(basis.col(static_cast<Eigen::Index>(j)).dot(w).real());
      // Full reorthogonalization, applied twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        const auto cols = static_cast<Eigen::Index>(j + 1);
        const CVector overlaps = basis.leftCols(cols).adjoint() * w;
        w -= basis.leftCols(cols) * overlaps;
        project_out(w, deflate);
      }
      steps = j + 1;
      const double b = w.norm();
      if (j + 1 == m || b <= 1e-13 * scale) break;
      beta.push_back(b);
      basis.col(static_cast<Eigen::Index>(j + 1)) = w / b;
    }

    RMatrix tri = RMatrix::Zero(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(steps));
    for (std::size_t k = 0; k < steps; ++k) {
      tri(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = alpha[k];
      if (k + 1 < steps) {
        tri(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = beta[k];
        tri(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = beta[k];
      }
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> small(tri);
    const RVector y = small.eigenvectors().col(0);
    CVector ritz = basis.leftCols(static_cast<Eigen::Index>(steps)) * y.cast<Complex>();
    project_out(ritz, deflate);
    ritz.normalize();
    CVector hv = h * ritz;
    const double value = ritz.dot(hv).real();
    const double residual = (hv - value * ritz).norm();
    if (residual < best.residual) best = Eigenpair{value, ritz, residual};
    if (residual <= tol) return best;
    v = ritz;
  }
  fail(ErrorCode::ConvergenceFailure, "Lanczos did not reach residual " + std::to_string(tol) + " (best " +
                                          std::to_string(best.residual) + ")");
}

GroundStateResult ground_state(const HamiltonianSpec& spec, const GroundStateOptions& options) {
  const SparseCMatrix h = build_matrix(spec);
  const auto dim = static_cast<std::size_t>(h.rows());
  GroundStateResult result;
  result.norm_estimate = norm_estimate(h);

  if (dim < options.dense_below) {
    const DenseSpectrum spectrum = dense_spectrum(h);
    result.energy = spectrum.values[0];
    result.gap = dim > 1 ? spectrum.values[1] - spectrum.values[0] : 0.0;
    result.state = wrap(spec, spectrum.vectors.col(0));
  } else {
    const Eigenpair ground = lanczos_lowest(h, {}, options);
    const Eigenpair excited = lanczos_lowest(h, {ground.vector}, options);
    result.energy = ground.value;
    result.gap = excited.value - ground.value;
    result.state = wrap(spec, ground.vector);
  }
  result.gap = std::max(0.0, result.gap);
  result.degenerate = dim > 1 && result.gap < options.degeneracy_tol;
  result.residual = residual_norm(h, result.state.amplitudes, result.energy);
  return result;
}

GroundMultiplet ground_multiplet(const HamiltonianSpec& spec, const GroundStateOptions& options) {
  const SparseCMatrix h = build_matrix(spec);
  const auto dim = static_cast<std::size_t>(h.rows());
  GroundMultiplet out;
  if (dim < options.dense_below) {
    const DenseSpectrum spectrum = dense_spectrum(h);
    for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
      if (spectrum.values[k] - spectrum.values[0] >= options.degeneracy_tol) break;
      out.states.push_back(wrap(spec, spectrum.vectors.col(k)));
      out.energies.push_back(spectrum.values[k]);
    }
    return out;
  }
  std::vector<CVector> found;
  while (found.size() < dim) {
    const Eigenpair pair = lanczos_lowest(h, found, options);
    if (!found.empty() && pair.value - out.energies.front() >= options.degeneracy_tol) break;
    found.push_back(pair.vector);
    out.states.push_back(wrap(spec, pair.vector));
    out.energies.push_back(pair.value);
  }
  return out;
}

}  // namespace shadowkit::simulator

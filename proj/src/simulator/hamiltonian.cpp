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
#include <string>

#include "shadowkit/error.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::simulator {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::TFIM: return "TFIM";
    case Family::RydbergChain: return "RydbergChain";
    case Family::Heisenberg2D: return "Heisenberg2D";
    case Family::XXZBondAlt: return "XXZBondAlt";
    case Family::AKLT: return "AKLT";
    case Family::Custom: return "Custom";
  }
  return "Custom";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::TFIM, Family::RydbergChain, Family::Heisenberg2D, Family::XXZBondAlt, Family::AKLT,
                   Family::Custom}) {
    if (to_string(f) == name) return f;
  }
  fail(ErrorCode::InvalidArgument, "unknown family tag '" + std::string(name) + "'");
}

std::size_t checked_dimension(std::size_t n, std::size_t local_dim, const Limits& limits) {
  if (local_dim < 2) fail(ErrorCode::UnsupportedLocalDim, "local dimension must be at least 2");
  const std::size_t cap = local_dim == 2 ? limits.max_qubit_dim : limits.max_qudit_dim;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    dim *= local_dim;
    if (dim > cap) {
      fail(ErrorCode::DimensionCap, std::to_string(local_dim) + "^" + std::to_string(n) + " exceeds the cap of " +
                                        std::to_string(cap));
    }
  }
  return dim;
}

std::size_t HamiltonianSpec::dimension() const {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= local_dim;
  return dim;
}

void validate_term(const LocalTerm& term, std::size_t n, std::size_t local_dim) {
  if (term.sites.empty()) fail(ErrorCode::BadTerm, "term acts on no sites");
  std::size_t expected = 1;
  for (std::size_t k = 0; k < term.sites.size(); ++k) {
    if (term.sites[k] >= n) {
      fail(ErrorCode::BadTerm, "site " + std::to_string(term.sites[k]) + " outside [0, " + std::to_string(n) + ")");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (term.sites[j] == term.sites[k]) fail(ErrorCode::BadTerm, "repeated site in term");
    }
    expected *= local_dim;
  }
  if (static_cast<std::size_t>(term.matrix.rows()) != expected ||
      static_cast<std::size_t>(term.matrix.cols()) != expected) {
    fail(ErrorCode::BadTerm, "term matrix is " + std::to_string(term.matrix.rows()) + "x" +
                                 std::to_string(term.matrix.cols()) + ", expected " + std::to_string(expected));
  }
  if (hermiticity_error(term.matrix) > 1e-12) fail(ErrorCode::BadTerm, "term matrix is not Hermitian");
  if (!std::isfinite(term.coefficient)) fail(ErrorCode::BadTerm, "non-finite coefficient");
}

namespace {

std::vector<std::size_t> site_strides(std::size_t n, std::size_t d) {
  std::vector<std::size_t> strides(n);
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    strides[i] = s;
    s *= d;
  }
  return strides;
}

}  // namespace

SparseCMatrix build_matrix(const HamiltonianSpec& spec, const Limits& limits) {
  const std::size_t dim = checked_dimension(spec.n, spec.local_dim, limits);
  const std::size_t d = spec.local_dim;
  const auto strides = site_strides(spec.n, d);

  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& term : spec.terms) {
    validate_term(term, spec.n, d);
    const std::size_t k = term.sites.size();
    const auto local_dim = static_cast<std::size_t>(term.matrix.rows());
    // Offsets of each local basis index in the global index space.
    std::vector<std::size_t> local_offset(local_dim, 0);
    for (std::size_t r = 0; r < local_dim; ++r) {
      std::size_t rest = r;
      for (std::size_t j = k; j-- > 0;) {
        local_offset[r] += (rest % d) * strides[term.sites[j]];
        rest /= d;
      }
    }
    triplets.reserve(triplets.size() + dim * 2);
    for (std::size_t g = 0; g < dim; ++g) {
      std::size_t col = 0;
      std::size_t base = g;
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t digit = (g / strides[term.sites[j]]) % d;
        col = col * d + digit;
        base -= digit * strides[term.sites[j]];
      }
      for (std::size_t r = 0; r < local_dim; ++r) {
        const Complex value = term.coefficient * term.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col));
        if (value == Complex(0.0, 0.0)) continue;
        triplets.emplace_back(static_cast<int>(base + local_offset[r]), static_cast<int>(g), value);
      }
    }
  }
  SparseCMatrix h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.prune(Complex(0.0, 0.0));
  h.makeCompressed();
  return h;
}

double norm_estimate(const SparseCMatrix& h) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
    double row = 0.0;
    for (SparseCMatrix::InnerIterator it(h, r); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

CMatrix pauli_x() { return (CMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished(); }
CMatrix pauli_y() {
  const Complex i(0.0, 1.0);
  return (CMatrix(2, 2) << 0.0, -i, i, 0.0).finished();
}
CMatrix pauli_z() { return (CMatrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished(); }

CMatrix spin1_x() {
  const double r = 1.0 / std::sqrt(2.0);
  return (CMatrix(3, 3) << 0.0, r, 0.0, r, 0.0, r, 0.0, r, 0.0).finished();
}
CMatrix spin1_y() {
  const Complex a(0.0, -1.0 / std::sqrt(2.0));
  return (CMatrix(3, 3) << 0.0, a, 0.0, -a, 0.0, a, 0.0, -a, 0.0).finished();
}
CMatrix spin1_z() { return (CMatrix(3, 3) << 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0).finished(); }

}  // namespace shadowkit::simulator

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
#include <cstdio>
#include <cstring>

#include "shadowkit/error.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::simulator {

namespace {

std::size_t power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < exponent; ++k) out *= base;
  return out;
}

std::vector<std::size_t> strides_for(std::size_t n, std::size_t d) {
  std::vector<std::size_t> strides(n);
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    strides[i] = s;
    s *= d;
  }
  return strides;
}

void check_sites(const std::vector<std::size_t>& sites, std::size_t n) {
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] >= n) fail(ErrorCode::InvalidArgument, "site " + std::to_string(sites[k]) + " out of range");
    for (std::size_t j = 0; j < k; ++j) {
      if (sites[j] == sites[k]) fail(ErrorCode::InvalidArgument, "repeated site");
    }
  }
}

}  // namespace

StateVector make_state(std::size_t n, std::size_t local_dim, CVector amplitudes) {
  if (local_dim < 2) fail(ErrorCode::UnsupportedLocalDim, "local dimension must be at least 2");
  if (static_cast<std::size_t>(amplitudes.size()) != power(local_dim, n)) {
    fail(ErrorCode::DimensionMismatch, "amplitude vector has length " + std::to_string(amplitudes.size()));
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) fail(ErrorCode::InvalidArgument, "state is not normalized");
  return StateVector{n, local_dim, std::move(amplitudes)};
}

StateVector basis_state(std::size_t local_dim, const std::vector<std::size_t>& digits) {
  const std::size_t n = digits.size();
  std::size_t index = 0;
  for (std::size_t digit : digits) {
    if (digit >= local_dim) fail(ErrorCode::InvalidArgument, "basis digit out of range");
    index = index * local_dim + digit;
  }
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(power(local_dim, n)));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector{n, local_dim, std::move(amps)};
}

StateVector product_state(const std::vector<CVector>& sites) {
  if (sites.empty()) fail(ErrorCode::InvalidArgument, "product state needs at least one site");
  const auto d = static_cast<std::size_t>(sites.front().size());
  CMatrix acc = CMatrix::Ones(1, 1);
  for (const auto& s : sites) {
    if (static_cast<std::size_t>(s.size()) != d) fail(ErrorCode::DimensionMismatch, "mixed local dimensions");
    const double norm = s.norm();
    if (norm == 0.0) fail(ErrorCode::InvalidArgument, "zero single-site vector");
    acc = kron(acc, CMatrix(s / norm));
  }
  return StateVector{sites.size(), d, acc.col(0)};
}

StateVector ghz_state(std::size_t n) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(power(2, n)));
  amps[0] = 1.0 / std::sqrt(2.0);
  amps[amps.size() - 1] = 1.0 / std::sqrt(2.0);
  return StateVector{n, 2, std::move(amps)};
}

CVector apply_local_matrix(const StateVector& state, const std::vector<std::size_t>& sites, const CMatrix& matrix) {
  check_sites(sites, state.n);
  const std::size_t d = state.local_dim;
  const std::size_t local = power(d, sites.size());
  if (static_cast<std::size_t>(matrix.rows()) != local || static_cast<std::size_t>(matrix.cols()) != local) {
    fail(ErrorCode::BadTerm, "local matrix does not match the site count");
  }
  const auto strides = strides_for(state.n, d);
  std::vector<std::size_t> offset(local, 0);
  for (std::size_t r = 0; r < local; ++r) {
    std::size_t rest = r;
    for (std::size_t j = sites.size(); j-- > 0;) {
      offset[r] += (rest % d) * strides[sites[j]];
      rest /= d;
    }
  }
  const std::size_t dim = state.dimension();
  CVector out = CVector::Zero(static_cast<Eigen::Index>(dim));
  CVector gathered(static_cast<Eigen::Index>(local));
  for (std::size_t g = 0; g < dim; ++g) {
    bool base = true;
    for (std::size_t s : sites) {
      if ((g / strides[s]) % d != 0) {
        base = false;
        break;
      }
    }
    if (!base) continue;
    for (std::size_t r = 0; r < local; ++r) gathered[static_cast<Eigen::Index>(r)] = state.amplitudes[static_cast<Eigen::Index>(g + offset[r])];
    const CVector mapped = matrix * gathered;
    for (std::size_t r = 0; r < local; ++r) out[static_cast<Eigen::Index>(g + offset[r])] = mapped[static_cast<Eigen::Index>(r)];
  }
  return out;
}

double exact_expectation(const StateVector& state, const std::vector<LocalTerm>& observable) {
  Complex total = 0.0;
  for (const auto& term : observable) {
    validate_term(term, state.n, state.local_dim);
    total += term.coefficient * state.amplitudes.dot(apply_local_matrix(state, term.sites, term.matrix));
  }
  return total.real();
}

DensityMatrix exact_rdm(const StateVector& state, const std::vector<std::size_t>& subsystem, std::size_t max_sites) {
  if (subsystem.empty()) fail(ErrorCode::InvalidArgument, "empty subsystem");
  if (subsystem.size() > max_sites) {
    fail(ErrorCode::SubsystemTooLarge, std::to_string(subsystem.size()) + " sites exceed the cap of " +
                                           std::to_string(max_sites));
  }
  check_sites(subsystem, state.n);
  const std::size_t d = state.local_dim;
  const auto strides = strides_for(state.n, d);
  std::vector<bool> in_sub(state.n, false);
  for (std::size_t s : subsystem) in_sub[s] = true;
  std::vector<std::size_t> complement;
  for (std::size_t s = 0; s < state.n; ++s) {
    if (!in_sub[s]) complement.push_back(s);
  }
  const std::size_t da = power(d, subsystem.size());
  const std::size_t db = power(d, complement.size());
  // Psi(a, b) with a over the subsystem (listed order) and b over the rest.
  CMatrix psi(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
  for (std::size_t g = 0; g < state.dimension(); ++g) {
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t s : subsystem) a = a * d + (g / strides[s]) % d;
    for (std::size_t s : complement) b = b * d + (g / strides[s]) % d;
    psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state.amplitudes[static_cast<Eigen::Index>(g)];
  }
  CMatrix rho = psi * psi.adjoint();
  return {0.5 * (rho + rho.adjoint())};
}

double exact_expectation(const GroundMultiplet& mixture, const std::vector<LocalTerm>& observable) {
  if (mixture.states.empty()) fail(ErrorCode::InvalidArgument, "empty multiplet");
  double total = 0.0;
  for (const auto& s : mixture.states) total += exact_expectation(s, observable);
  return total / static_cast<double>(mixture.states.size());
}

DensityMatrix exact_rdm(const GroundMultiplet& mixture, const std::vector<std::size_t>& subsystem,
                        std::size_t max_sites) {
  if (mixture.states.empty()) fail(ErrorCode::InvalidArgument, "empty multiplet");
  CMatrix acc;
  for (const auto& s : mixture.states) {
    const CMatrix rho = exact_rdm(s, subsystem, max_sites).matrix;
    if (acc.size() == 0) {
      acc = rho;
    } else {
      acc += rho;
    }
  }
  return {acc / static_cast<double>(mixture.states.size())};
}

std::string state_hash(const StateVector& state) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < bytes; ++k) {
      h ^= p[k];
      h *= 0x100000001b3ull;
    }
  };
  const std::uint64_t header[2] = {state.n, state.local_dim};
  feed(header, sizeof(header));
  for (Eigen::Index k = 0; k < state.amplitudes.size(); ++k) {
    const double parts[2] = {state.amplitudes[k].real(), state.amplitudes[k].imag()};
    feed(parts, sizeof(parts));
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

}  // namespace shadowkit::simulator

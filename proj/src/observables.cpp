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

#include "shadowkit/observables.hpp"

#include <cmath>
#include <numbers>

#include "shadowkit/error.hpp"
#include "shadowkit/predictor.hpp"

namespace shadowkit::observables {

namespace {

Eigen::Matrix2cd to2(const CMatrix& m) { return Eigen::Matrix2cd(m); }

}  // namespace

ObservableSpec make_observable(std::vector<shadows::ProductTerm> terms, std::string name) {
  ObservableSpec spec;
  spec.terms = std::move(terms);
  spec.id = predictor::observable_id(spec.terms);
  spec.name = std::move(name);
  return spec;
}

Eigen::Matrix2cd rydberg_projector() { return (Eigen::Matrix2cd() << 0.0, 0.0, 0.0, 1.0).finished(); }
Eigen::Matrix2cd ground_projector() { return (Eigen::Matrix2cd() << 1.0, 0.0, 0.0, 0.0).finished(); }

ObservableSpec order_param_z2(std::size_t n) {
  if (n < 2) fail(ErrorCode::ChainTooShort, "Z2 order parameter needs n >= 2");
  const double w = 1.0 / static_cast<double>(n - 1);
  std::vector<shadows::ProductTerm> terms;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    terms.push_back({{{i, rydberg_projector()}, {i + 1, ground_projector()}}, w});
    terms.push_back({{{i, ground_projector()}, {i + 1, rydberg_projector()}}, w});
  }
  return make_observable(std::move(terms), "O_Z2");
}

ObservableSpec order_param_z3(std::size_t n) {
  if (n < 3) fail(ErrorCode::ChainTooShort, "Z3 order parameter needs n >= 3");
  const double w = 1.0 / static_cast<double>(n - 2);
  std::vector<shadows::ProductTerm> terms;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t excited = 0; excited < 3; ++excited) {
      shadows::ProductFactors f;
      for (std::size_t k = 0; k < 3; ++k) f[i + k] = k == excited ? rydberg_projector() : ground_projector();
      terms.push_back({f, w});
    }
  }
  return make_observable(std::move(terms), "O_Z3");
}

ObservableSpec correlator(std::size_t i, std::size_t j) {
  if (i == j) fail(ErrorCode::SameSite, "correlator needs two distinct sites");
  std::vector<shadows::ProductTerm> terms;
  for (const CMatrix& p : {simulator::pauli_x(), simulator::pauli_y(), simulator::pauli_z()}) {
    terms.push_back({{{i, to2(p)}, {j, to2(p)}}, 1.0 / 3.0});
  }
  return make_observable(std::move(terms), "C_" + std::to_string(i) + "_" + std::to_string(j));
}

ObservableSpec pauli(char axis, std::size_t site) {
  CMatrix p;
  switch (axis) {
    case 'X': p = simulator::pauli_x(); break;
    case 'Y': p = simulator::pauli_y(); break;
    case 'Z': p = simulator::pauli_z(); break;
    default: fail(ErrorCode::InvalidArgument, std::string("unknown Pauli axis '") + axis + "'");
  }
  return make_observable({{{{site, to2(p)}}, 1.0}}, std::string(1, axis) + "_" + std::to_string(site));
}

std::vector<simulator::LocalTerm> to_local_terms(const ObservableSpec& observable) {
  std::vector<simulator::LocalTerm> out;
  for (const auto& term : observable.terms) {
    if (term.factors.empty()) fail(ErrorCode::BadTerm, "product term without factors");
    simulator::LocalTerm local;
    CMatrix m = CMatrix::Ones(1, 1);
    for (const auto& [site, factor] : term.factors) {
      local.sites.push_back(site);
      m = kron(m, CMatrix(factor));
    }
    local.matrix = m;
    local.coefficient = term.coefficient;
    out.push_back(std::move(local));
  }
  return out;
}

double exact_value(const simulator::StateVector& state, const ObservableSpec& observable) {
  return simulator::exact_expectation(state, to_local_terms(observable));
}

double shadow_value(const shadows::ClassicalShadow& shadow, const ObservableSpec& observable) {
  return shadows::estimate_observable_sum(shadow, observable.terms);
}

nlohmann::json to_json(const ObservableSpec& observable) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : to_local_terms(observable)) terms.push_back(simulator::to_json(t));
  return {{"id", observable.id}, {"name", observable.name}, {"terms", terms}};
}

std::string to_string(RydbergPhase phase) {
  switch (phase) {
    case RydbergPhase::Z2Order: return "Z2";
    case RydbergPhase::Z3Order: return "Z3";
    case RydbergPhase::Disordered: return "disordered";
  }
  return "disordered";
}

RydbergPhase classify_rydberg_phase(double z2, double z3) {
  if (z2 >= z3) return z2 > kRydbergThreshold ? RydbergPhase::Z2Order : RydbergPhase::Disordered;
  return z3 > kRydbergThreshold ? RydbergPhase::Z3Order : RydbergPhase::Disordered;
}

RydbergPhase classify_rydberg_phase(const simulator::StateVector& state) {
  return classify_rydberg_phase(exact_value(state, order_param_z2(state.n)), exact_value(state, order_param_z3(state.n)));
}

RydbergPhase classify_rydberg_phase(const shadows::ClassicalShadow& shadow) {
  const std::size_t n = shadow.num_qubits();
  return classify_rydberg_phase(shadow_value(shadow, order_param_z2(n)), shadow_value(shadow, order_param_z3(n)));
}

double partial_reflection_invariant(const simulator::StateVector& state, Interval i1, Interval i2) {
  if (i1.length == 0 || i2.length == 0) fail(ErrorCode::InvalidArgument, "intervals must be nonempty");
  if (i1.length != i2.length) fail(ErrorCode::InvalidArgument, "intervals must have equal length");
  if (i1.first + i1.length != i2.first) fail(ErrorCode::NonAdjacent, "I2 must start where I1 ends");
  const std::size_t total = i1.length + i2.length;
  if (total > kMaxReflectionSites) fail(ErrorCode::SubsystemTooLarge, "I1 u I2 exceeds 12 sites");
  if (i2.first + i2.length > state.n) fail(ErrorCode::IntervalOutOfRange, "interval extends past the chain");

  const std::size_t d = state.local_dim;
  std::vector<std::size_t> strides(state.n);
  std::size_t s = 1;
  for (std::size_t site = state.n; site-- > 0;) {
    strides[site] = s;
    s *= d;
  }
  // Z_R = <psi| R |psi> with R permuting the digits of the union.
  Complex z = 0.0;
  for (std::size_t g = 0; g < state.dimension(); ++g) {
    std::size_t image = g;
    for (std::size_t k = 0; k < total; ++k) {
      const std::size_t from = i1.first + k;
      image -= ((g / strides[from]) % d) * strides[from];
    }
    for (std::size_t k = 0; k < total; ++k) {
      const std::size_t from = i1.first + k;
      const std::size_t to = i1.first + total - 1 - k;
      image += ((g / strides[from]) % d) * strides[to];
    }
    z += std::conj(state.amplitudes[static_cast<Eigen::Index>(image)]) * state.amplitudes[static_cast<Eigen::Index>(g)];
  }
  auto sites_of = [](Interval in) {
    std::vector<std::size_t> sites;
    for (std::size_t k = 0; k < in.length; ++k) sites.push_back(in.first + k);
    return sites;
  };
  const CMatrix rho1 = simulator::exact_rdm(state, sites_of(i1), kMaxReflectionSites / 2).matrix;
  const CMatrix rho2 = simulator::exact_rdm(state, sites_of(i2), kMaxReflectionSites / 2).matrix;
  const double purity1 = (rho1 * rho1).trace().real();
  const double purity2 = (rho2 * rho2).trace().real();
  return z.real() / std::sqrt(0.5 * (purity1 + purity2));
}

std::pair<Interval, Interval> central_intervals(std::size_t n, std::size_t length) {
  if (2 * length > n) fail(ErrorCode::IntervalOutOfRange, "intervals do not fit in the chain");
  const std::size_t first = n / 2 - length;
  return {Interval{first, length}, Interval{first + length, length}};
}

std::size_t twist_site(long k, std::size_t n, bool periodic) {
  const long site = k + static_cast<long>(n / 2) - 1;
  const auto big_n = static_cast<long>(n);
  if (periodic) return static_cast<std::size_t>(((site % big_n) + big_n) % big_n);
  if (site < 0 || site >= big_n) fail(ErrorCode::IntervalOutOfRange, "twist window extends past the open chain");
  return static_cast<std::size_t>(site);
}

std::complex<double> twist_expectation(const simulator::StateVector& state, double ell, bool periodic) {
  if (state.local_dim != 3) fail(ErrorCode::WrongLocalDim, "twist operator acts on spin-1 chains");
  if (!(ell >= 0.0)) fail(ErrorCode::InvalidArgument, "twist length must be >= 0");
  const long k_min = static_cast<long>(std::ceil(-ell));
  const long k_max = static_cast<long>(std::floor(ell + 1.0));
  if (static_cast<std::size_t>(k_max - k_min + 1) > state.n) {
    fail(ErrorCode::IntervalOutOfRange, "twist window of " + std::to_string(k_max - k_min + 1) + " sites exceeds n=" +
                                            std::to_string(state.n));
  }
  // Per-site rotation angle; basis digit 0, 1, 2 carries S^z = +1, 0, -1.
  std::vector<double> angle(state.n, 0.0);
  for (long k = k_min; k <= k_max; ++k) {
    angle[twist_site(k, state.n, periodic)] = 2.0 * std::numbers::pi * (static_cast<double>(k) + ell) / (2.0 * ell + 1.0);
  }
  std::vector<std::size_t> strides(state.n);
  std::size_t s = 1;
  for (std::size_t site = state.n; site-- > 0;) {
    strides[site] = s;
    s *= 3;
  }
  Complex total = 0.0;
  for (std::size_t g = 0; g < state.dimension(); ++g) {
    const double weight = std::norm(state.amplitudes[static_cast<Eigen::Index>(g)]);
    if (weight == 0.0) continue;
    double phase = 0.0;
    for (std::size_t site = 0; site < state.n; ++site) {
      if (angle[site] == 0.0) continue;
      const double sz = 1.0 - static_cast<double>((g / strides[site]) % 3);
      phase -= angle[site] * sz;
    }
    total += weight * std::polar(1.0, phase);
  }
  return total;
}

double twist_hermitian_expectation(const simulator::StateVector& state, double ell, bool periodic) {
  return twist_expectation(state, ell, periodic).real();
}

}  // namespace shadowkit::observables

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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowkit/shadows.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::observables {

/// Sum of tensor products of single-qubit factors.
struct ObservableSpec {
  std::vector<shadows::ProductTerm> terms;
  std::string id;  // canonical hash of the terms
  std::string name;
};

ObservableSpec make_observable(std::vector<shadows::ProductTerm> terms, std::string name);

/// Projector onto |1> (Rydberg state r) and |0> (ground state g).
Eigen::Matrix2cd rydberg_projector();
Eigen::Matrix2cd ground_projector();

/// (1/(n-1)) sum_i (|r g><r g| + |g r><g r|) on sites (i, i+1).
ObservableSpec order_param_z2(std::size_t n);
/// (1/(n-2)) sum_i of the three single-excitation projectors on (i, i+1, i+2).
ObservableSpec order_param_z3(std::size_t n);
/// (1/3)(X_i X_j + Y_i Y_j + Z_i Z_j).
ObservableSpec correlator(std::size_t i, std::size_t j);
/// Single-site Pauli, `axis` in {'X', 'Y', 'Z'}.
ObservableSpec pauli(char axis, std::size_t site);

/// Dense local terms (sites ascending) for exact evaluation.
std::vector<simulator::LocalTerm> to_local_terms(const ObservableSpec& observable);
double exact_value(const simulator::StateVector& state, const ObservableSpec& observable);
double shadow_value(const shadows::ClassicalShadow& shadow, const ObservableSpec& observable);

nlohmann::json to_json(const ObservableSpec& observable);

// Rydberg phases -------------------------------------------------------------

enum class RydbergPhase { Z2Order, Z3Order, Disordered };

std::string to_string(RydbergPhase phase);

inline constexpr double kRydbergThreshold = 0.8;

/// The larger order parameter names the phase when it exceeds 0.8; exact
/// ties go to Z2Order.
RydbergPhase classify_rydberg_phase(double z2, double z3);
RydbergPhase classify_rydberg_phase(const simulator::StateVector& state);
RydbergPhase classify_rydberg_phase(const shadows::ClassicalShadow& shadow);

// Partial reflection ---------------------------------------------------------

struct Interval {
  std::size_t first = 0;
  std::size_t length = 0;
};

inline constexpr std::size_t kMaxReflectionSites = 12;

/// Z_R / sqrt((Tr rho_I1^2 + Tr rho_I2^2) / 2) with Z_R = <psi| R_{I1 u I2} |psi>,
/// R reversing the site order of I1 u I2. I2 must start where I1 ends.
double partial_reflection_invariant(const simulator::StateVector& state, Interval i1, Interval i2);

/// Two adjacent intervals of `length` sites meeting at the chain centre.
std::pair<Interval, Interval> central_intervals(std::size_t n, std::size_t length);

// Twist operator -------------------------------------------------------------

/// Chain site carrying twist index k (k in [-l, l+1]): k + floor(n/2) - 1,
/// wrapped modulo n when periodic.
std::size_t twist_site(long k, std::size_t n, bool periodic);

/// <psi| O_l |psi> with O_l = prod_{-l <= k <= l+1} exp(-i 2 pi (k + l)/(2l + 1) S^z_k).
/// `ell` may be any real >= 0 (the window covers the integers in [-ell, ell+1]).
std::complex<double> twist_expectation(const simulator::StateVector& state, double ell, bool periodic = true);

/// <psi| (O_l + O_l^dagger)/2 |psi>.
double twist_hermitian_expectation(const simulator::StateVector& state, double ell, bool periodic = true);

}  // namespace shadowkit::observables

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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowkit/linalg.hpp"
#include "shadowkit/shadows.hpp"

namespace shadowkit::simulator {

/// coefficient * matrix acting on `sites`; the first listed site is the most
/// significant tensor factor of `matrix`.
struct LocalTerm {
  std::vector<std::size_t> sites;
  CMatrix matrix;
  double coefficient = 1.0;
};

enum class Family { TFIM, RydbergChain, Heisenberg2D, XXZBondAlt, AKLT, Custom };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// One physical parameter and the closed interval mapped affinely onto [-1, 1].
struct ParameterAxis {
  std::string name;
  double low = -1.0;
  double high = 1.0;

  double normalize(double physical) const { return 2.0 * (physical - low) / (high - low) - 1.0; }
  double denormalize(double x) const { return low + 0.5 * (x + 1.0) * (high - low); }
};

struct HamiltonianSpec {
  std::size_t n = 0;
  std::size_t local_dim = 2;
  std::vector<LocalTerm> terms;
  Family family = Family::Custom;
  std::vector<double> params;           // normalized, in [-1, 1]^m
  std::vector<double> physical_params;  // raw family parameters
  std::vector<ParameterAxis> physical_box;

  std::size_t dimension() const;
};

struct Limits {
  std::size_t max_qubit_dim = std::size_t{1} << 14;
  std::size_t max_qudit_dim = 59049;  // 3^10
};

/// Throws DimensionCap when local_dim^n exceeds the cap for that local dimension.
std::size_t checked_dimension(std::size_t n, std::size_t local_dim, const Limits& limits = {});

/// Validates sizes, site ranges and Hermiticity (1e-12, max entry).
void validate_term(const LocalTerm& term, std::size_t n, std::size_t local_dim);

SparseCMatrix build_matrix(const HamiltonianSpec& spec, const Limits& limits = {});

// States ---------------------------------------------------------------------

struct StateVector {
  std::size_t n = 0;
  std::size_t local_dim = 2;
  CVector amplitudes;

  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
};

/// Wraps amplitudes after checking the length and unit norm (1e-10).
StateVector make_state(std::size_t n, std::size_t local_dim, CVector amplitudes);

/// Computational basis state; digits[0] is site 0.
StateVector basis_state(std::size_t local_dim, const std::vector<std::size_t>& digits);

/// Tensor product of single-site states (each normalized on input).
StateVector product_state(const std::vector<CVector>& sites);

/// (|0...0> + |1...1>)/sqrt(2).
StateVector ghz_state(std::size_t n);

/// sum_j coefficient_j <psi| term_j |psi>.
double exact_expectation(const StateVector& state, const std::vector<LocalTerm>& observable);

/// |psi'> = (embedded term) |psi| without the coefficient.
CVector apply_local_matrix(const StateVector& state, const std::vector<std::size_t>& sites, const CMatrix& matrix);

inline constexpr std::size_t kDefaultMaxRdmSites = 6;

/// Partial trace onto `subsystem` (listed order = tensor order).
DensityMatrix exact_rdm(const StateVector& state, const std::vector<std::size_t>& subsystem,
                        std::size_t max_sites = kDefaultMaxRdmSites);

// Ground states --------------------------------------------------------------

struct GroundStateOptions {
  double degeneracy_tol = 1e-8;
  /// Dense diagonalization strictly below this dimension, Lanczos otherwise.
  std::size_t dense_below = 4096;
  std::size_t krylov_dim = 100;
  std::size_t max_restarts = 500;
  /// Lanczos stops when ||H v - E v|| <= residual_tol * ||H||_est.
  double residual_tol = 1e-11;
};

struct GroundStateResult {
  StateVector state;
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  double residual = 0.0;
  double norm_estimate = 0.0;
};

GroundStateResult ground_state(const HamiltonianSpec& spec, const GroundStateOptions& options = {});

/// Uniform mixture over the eigenvectors whose energies lie within
/// degeneracy_tol of the minimum (the zero-temperature Gibbs state).
struct GroundMultiplet {
  std::vector<StateVector> states;
  std::vector<double> energies;
};

GroundMultiplet ground_multiplet(const HamiltonianSpec& spec, const GroundStateOptions& options = {});

double exact_expectation(const GroundMultiplet& mixture, const std::vector<LocalTerm>& observable);
DensityMatrix exact_rdm(const GroundMultiplet& mixture, const std::vector<std::size_t>& subsystem,
                        std::size_t max_sites = kDefaultMaxRdmSites);

struct Eigenpair {
  double value = 0.0;
  CVector vector;
  double residual = 0.0;
};

/// Restarted Lanczos with full reorthogonalization for the lowest eigenpair
/// of `h` restricted to the orthogonal complement of `deflate`.
Eigenpair lanczos_lowest(const SparseCMatrix& h, const std::vector<CVector>& deflate,
                         const GroundStateOptions& options);

/// Upper bound on the spectral norm (max absolute row sum).
double norm_estimate(const SparseCMatrix& h);

// Measurement ----------------------------------------------------------------

/// T rounds of uniformly random single-qubit Pauli measurements. Snapshot t
/// draws from its own counter-based stream keyed by (seed, t), so results do
/// not depend on the thread count.
shadows::ClassicalShadow sample_shadow(const StateVector& state, std::size_t T, std::uint64_t seed);

/// Each snapshot first picks a member of the multiplet uniformly.
shadows::ClassicalShadow sample_shadow(const GroundMultiplet& mixture, std::size_t T, std::uint64_t seed);

/// Born distribution of the state rotated into the product eigenbasis given
/// by `bases` (0 = Z, 1 = X, 2 = Y, one per qubit).
RVector measurement_probabilities(const StateVector& state, std::span<const std::uint8_t> bases);

/// Stable FNV-1a hash of the amplitude bytes, for provenance records.
std::string state_hash(const StateVector& state);

// Named families -------------------------------------------------------------

/// H = -J sum Z_i Z_{i+1} - h sum X_i on an open (or periodic) chain.
/// Parameter: h over `field_box`.
struct TfimFamily {
  std::size_t n = 2;
  double coupling = 1.0;
  ParameterAxis field{"h", 0.5, 1.5};
  bool periodic = false;

  std::size_t num_params() const { return 1; }
  HamiltonianSpec from_physical(std::span<const double> physical) const;
  HamiltonianSpec from_normalized(std::span<const double> x) const;
};

/// H = (Omega/2) sum X_i - Delta sum N_i + Omega sum_{i<j, j-i<=range} (R_b/(a|i-j|))^6 N_i N_j
/// with Omega = 1. Parameters: (Delta/Omega, R_b/a).
struct RydbergChainFamily {
  std::size_t n = 8;
  std::size_t interaction_range = 4;
  ParameterAxis detuning{"delta_over_omega", -2.0, 4.0};
  ParameterAxis blockade{"rb_over_a", 1.0, 3.0};

  std::size_t num_params() const { return 2; }
  HamiltonianSpec from_physical(std::span<const double> physical) const;
  HamiltonianSpec from_normalized(std::span<const double> x) const;
};

/// sum over nearest-neighbour bonds of an Lx x Ly open lattice of
/// J_ij (X_i X_j + Y_i Y_j + Z_i Z_j). Parameters: one J_ij in [0, 2] per bond.
struct Heisenberg2DFamily {
  std::size_t lx = 2;
  std::size_t ly = 2;
  ParameterAxis coupling{"J", 0.0, 2.0};

  std::vector<std::pair<std::size_t, std::size_t>> bonds() const;
  std::size_t num_params() const { return bonds().size(); }
  HamiltonianSpec from_physical(std::span<const double> physical) const;
  HamiltonianSpec from_normalized(std::span<const double> x) const;
  /// Couplings drawn uniformly from the box with a seeded stream.
  HamiltonianSpec sample(std::uint64_t seed) const;
};

/// Open chain with bond (i, i+1) weighted J for even i and J' for odd i
/// (0-based), each bond J_b (X X + Y Y + delta Z Z), plus 0.1 J Z_0 to pin
/// one ground state in the symmetry-broken phase. J = 1. Parameters: (J'/J, delta).
struct XXZBondAlternatingFamily {
  std::size_t n = 8;
  double coupling = 1.0;
  double pin_strength = 0.1;
  ParameterAxis ratio{"jprime_over_j", 0.1, 3.0};
  ParameterAxis anisotropy{"delta", 0.0, 4.0};

  std::size_t num_params() const { return 2; }
  HamiltonianSpec from_physical(std::span<const double> physical) const;
  HamiltonianSpec from_normalized(std::span<const double> x) const;
};

/// Spin-1 AKLT chain sum [S_i.S_j + (1/3)(S_i.S_j)^2]; local basis ordered
/// S_z = +1, 0, -1.
struct AkltFamily {
  std::size_t n = 6;
  bool periodic = true;

  HamiltonianSpec build() const;
};

HamiltonianSpec tfim_family(std::size_t n, double field, double coupling = 1.0);
HamiltonianSpec rydberg_chain(std::size_t n, double detuning_over_omega, double blockade_over_spacing);
HamiltonianSpec heisenberg2d(std::size_t lx, std::size_t ly, std::uint64_t seed);
HamiltonianSpec xxz_bond_alternating(std::size_t n, double jprime_over_j, double delta);
HamiltonianSpec aklt_spin1(std::size_t n, bool periodic = true);

/// Builds the named family from its normalized parameters.
HamiltonianSpec family_from_normalized(Family family, std::size_t n, std::span<const double> x);
std::size_t family_num_params(Family family, std::size_t n);

// Pauli and spin matrices.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix spin1_x();
CMatrix spin1_y();
CMatrix spin1_z();

// JSON -----------------------------------------------------------------------

nlohmann::json to_json(const LocalTerm& term);
LocalTerm term_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HamiltonianSpec& spec);
HamiltonianSpec spec_from_json(const nlohmann::json& j);

}  // namespace shadowkit::simulator

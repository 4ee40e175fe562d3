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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "shadowkit/error.hpp"
#include "shadowkit/observables.hpp"
#include "shadowkit/simulator.hpp"
#include "test_support.hpp"

namespace sk = shadowkit;
namespace sim = shadowkit::simulator;
using shadowkit::CMatrix;
using shadowkit::Complex;
using shadowkit::CVector;
using shadowkit::testing::embed;
using shadowkit::testing::embed2;

namespace {

CMatrix dense(const sim::HamiltonianSpec& spec) { return CMatrix(sim::build_matrix(spec)); }

Eigen::VectorXd spectrum(const CMatrix& h) { return Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvalues(); }

sim::HamiltonianSpec custom(std::size_t n, std::vector<sim::LocalTerm> terms) {
  sim::HamiltonianSpec spec;
  spec.n = n;
  spec.terms = std::move(terms);
  return spec;
}

}  // namespace

TEST(BuildMatrix, PureFieldTwoQubitsHasSpectrumMinus2_0_0_2) {
  const auto h = dense(sim::tfim_family(2, 1.0, 0.0));
  const auto ev = spectrum(h);
  EXPECT_NEAR(ev[0], -2.0, 1e-12);
  EXPECT_NEAR(ev[1], 0.0, 1e-12);
  EXPECT_NEAR(ev[2], 0.0, 1e-12);
  EXPECT_NEAR(ev[3], 2.0, 1e-12);
}

TEST(BuildMatrix, SingleZTermIsDiagonal) {
  const auto h = dense(custom(1, {{{0}, sim::pauli_z(), 1.0}}));
  EXPECT_NEAR((h - CMatrix(sim::pauli_z())).norm(), 0.0, 1e-15);
}

TEST(BuildMatrix, XxzMatchesExplicitKroneckerSum) {
  const std::size_t n = 4;
  const auto spec = sim::xxz_bond_alternating(n, 1.0, 1.0);
  CMatrix expected = CMatrix::Zero(16, 16);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (const CMatrix& p : {sim::pauli_x(), sim::pauli_y(), sim::pauli_z()}) expected += embed2(p, i, p, i + 1, n);
  }
  expected += 0.1 * embed(sim::pauli_z(), 0, n);
  EXPECT_LT((dense(spec) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildMatrix, TfimMatchesExplicitKroneckerSum) {
  const std::size_t n = 5;
  const auto spec = sim::tfim_family(n, 0.7, 1.3);
  CMatrix expected = CMatrix::Zero(32, 32);
  for (std::size_t i = 0; i + 1 < n; ++i) expected -= 1.3 * embed2(sim::pauli_z(), i, sim::pauli_z(), i + 1, n);
  for (std::size_t i = 0; i < n; ++i) expected -= 0.7 * embed(sim::pauli_x(), i, n);
  EXPECT_LT((dense(spec) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildMatrix, FamiliesAreHermitianAcrossTheBox) {
  for (double a : {-1.0, -0.3, 0.4, 1.0}) {
    for (double b : {-1.0, 0.2, 1.0}) {
      const std::vector<double> x2 = {a, b};
      EXPECT_LE(sk::hermiticity_error(dense(sim::family_from_normalized(sim::Family::RydbergChain, 6, x2))), 1e-12);
      EXPECT_LE(sk::hermiticity_error(dense(sim::family_from_normalized(sim::Family::XXZBondAlt, 6, x2))), 1e-12);
      const std::vector<double> x1 = {a};
      EXPECT_LE(sk::hermiticity_error(dense(sim::family_from_normalized(sim::Family::TFIM, 5, x1))), 1e-12);
    }
  }
  EXPECT_LE(sk::hermiticity_error(dense(sim::heisenberg2d(2, 3, 5))), 1e-12);
  EXPECT_LE(sk::hermiticity_error(dense(sim::aklt_spin1(4))), 1e-12);
}

TEST(BuildMatrix, DimensionCapIsEnforced) {
  try {
    sim::build_matrix(sim::tfim_family(15, 1.0));
    FAIL() << "expected DimensionCap";
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::DimensionCap);
  }
  EXPECT_THROW(sim::checked_dimension(11, 3), sk::Error);
  EXPECT_EQ(sim::checked_dimension(10, 3), 59049u);
  EXPECT_EQ(sim::checked_dimension(14, 2), 16384u);
}

TEST(BuildMatrix, NonHermitianTermIsRejected) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    sim::build_matrix(custom(1, {{{0}, m, 1.0}}));
    FAIL() << "expected BadTerm";
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::BadTerm);
  }
  EXPECT_THROW(sim::build_matrix(custom(2, {{{0, 1}, sim::pauli_z(), 1.0}})), sk::Error);
  EXPECT_THROW(sim::build_matrix(custom(2, {{{2}, sim::pauli_z(), 1.0}})), sk::Error);
}

TEST(BuildMatrix, FamilyRecordsNormalizedAndPhysicalParameters) {
  sim::XXZBondAlternatingFamily fam;
  const std::vector<double> phys = {fam.ratio.low, fam.anisotropy.high};
  const auto spec = fam.from_physical(phys);
  ASSERT_EQ(spec.params.size(), 2u);
  EXPECT_NEAR(spec.params[0], -1.0, 1e-15);
  EXPECT_NEAR(spec.params[1], 1.0, 1e-15);
  EXPECT_EQ(spec.physical_params, phys);
  EXPECT_EQ(spec.family, sim::Family::XXZBondAlt);
  const std::vector<double> x = {0.25, -0.5};
  const auto again = fam.from_normalized(x);
  EXPECT_NEAR(again.params[0], 0.25, 1e-14);
  EXPECT_NEAR(again.params[1], -0.5, 1e-14);
}

TEST(GroundState, TransverseFieldOnlyGivesPlusState) {
  const auto r = sim::ground_state(sim::tfim_family(3, 1.0, 0.0));
  EXPECT_NEAR(r.energy, -3.0, 1e-10);
  EXPECT_NEAR(r.gap, 2.0, 1e-10);
  EXPECT_FALSE(r.degenerate);
  const auto plus = sim::product_state(std::vector<CVector>(3, CVector::Constant(2, Complex(1.0, 0.0))));
  EXPECT_NEAR(std::abs(plus.amplitudes.dot(r.state.amplitudes)), 1.0, 1e-10);
}

TEST(GroundState, FerromagnetIsFlaggedDegenerate) {
  const auto spec = custom(2, {{{0, 1}, sk::kron(sim::pauli_z(), sim::pauli_z()), -1.0}});
  const auto r = sim::ground_state(spec);
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.gap, 0.0, 1e-12);
  const auto mix = sim::ground_multiplet(spec);
  ASSERT_EQ(mix.states.size(), 2u);
  EXPECT_NEAR(sim::exact_expectation(mix, {{{0}, sim::pauli_z(), 1.0}}), 0.0, 1e-10);
}

TEST(GroundState, LanczosAgreesWithDenseSolver) {
  const auto spec = sim::xxz_bond_alternating(8, 1.7, 0.8);
  sim::GroundStateOptions lanczos;
  lanczos.dense_below = 0;
  const auto a = sim::ground_state(spec);
  const auto b = sim::ground_state(spec, lanczos);
  EXPECT_NEAR(a.energy, b.energy, 1e-9);
  EXPECT_NEAR(a.gap, b.gap, 1e-7);
  EXPECT_NEAR(std::abs(a.state.amplitudes.dot(b.state.amplitudes)), 1.0, 1e-8);
  EXPECT_LE(b.residual, 1e-8 * b.norm_estimate);
}

TEST(GroundState, ResidualBoundHolds) {
  const auto spec = sim::rydberg_chain(8, 2.0, 1.5);
  const auto r = sim::ground_state(spec);
  const CVector hv = sim::build_matrix(spec) * r.state.amplitudes;
  EXPECT_LE((hv - r.energy * r.state.amplitudes).norm(), 1e-8 * r.norm_estimate);
  EXPECT_GE(r.gap, 0.0);
  EXPECT_NEAR(r.state.amplitudes.norm(), 1.0, 1e-10);
}

TEST(GroundState, RydbergDeepZ2RegionIsOrdered) {
  const auto r = sim::ground_state(sim::rydberg_chain(8, 3.5, 1.5));
  EXPECT_GT(sk::observables::exact_value(r.state, sk::observables::order_param_z2(8)), 0.8);
}

TEST(GroundState, AkltEnergyIsMinusTwoThirdsPerBond) {
  const auto r = sim::ground_state(sim::aklt_spin1(6));
  EXPECT_NEAR(r.energy, -6.0 * 2.0 / 3.0, 1e-9);
  EXPECT_FALSE(r.degenerate);
}

TEST(GroundState, GlobalPhaseIsFixed) {
  const auto r = sim::ground_state(sim::tfim_family(4, 0.9));
  Eigen::Index peak = 0;
  r.state.amplitudes.cwiseAbs().maxCoeff(&peak);
  EXPECT_NEAR(r.state.amplitudes[peak].imag(), 0.0, 1e-14);
  EXPECT_GT(r.state.amplitudes[peak].real(), 0.0);
}

TEST(Heisenberg2D, SampledCouplingsAreSeededAndInBox) {
  sim::Heisenberg2DFamily fam;
  fam.lx = 2;
  fam.ly = 3;
  EXPECT_EQ(fam.bonds().size(), 7u);
  const auto a = fam.sample(9);
  const auto b = fam.sample(9);
  const auto c = fam.sample(10);
  EXPECT_EQ(a.physical_params, b.physical_params);
  EXPECT_NE(a.physical_params, c.physical_params);
  for (double j : a.physical_params) {
    EXPECT_GE(j, 0.0);
    EXPECT_LE(j, 2.0);
  }
}

TEST(ExactExpectation, BasisAndPlusStates) {
  const sim::LocalTerm z{{0}, sim::pauli_z(), 1.0};
  EXPECT_NEAR(sim::exact_expectation(sim::basis_state(2, {0}), {z}), 1.0, 1e-15);
  const auto plus = sim::product_state({CVector::Constant(2, Complex(1.0, 0.0))});
  EXPECT_NEAR(sim::exact_expectation(plus, {z}), 0.0, 1e-15);
}

TEST(ExactExpectation, TfimMatchesIndependentDenseDiagonalization) {
  const std::size_t n = 6;
  CMatrix h = CMatrix::Zero(64, 64);
  for (std::size_t i = 0; i + 1 < n; ++i) h -= embed2(sim::pauli_z(), i, sim::pauli_z(), i + 1, n);
  for (std::size_t i = 0; i < n; ++i) h -= 1.0 * embed(sim::pauli_x(), i, n);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const CVector v = solver.eigenvectors().col(0);
  const double expected = (v.adjoint() * embed(sim::pauli_x(), 3, n) * v)(0, 0).real();
  const auto r = sim::ground_state(sim::tfim_family(n, 1.0));
  EXPECT_NEAR(sim::exact_expectation(r.state, {{{3}, sim::pauli_x(), 1.0}}), expected, 1e-8);
}

TEST(ExactRdm, Examples) {
  const auto r00 = sim::exact_rdm(sim::basis_state(2, {0, 0}), {0}).matrix;
  EXPECT_NEAR(std::abs(r00(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r00(1, 1)), 0.0, 1e-15);

  const auto bell = sim::ghz_state(2);
  EXPECT_LT((sim::exact_rdm(bell, {0}).matrix - 0.5 * CMatrix::Identity(2, 2)).norm(), 1e-15);

  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  EXPECT_LT((sim::exact_rdm(sim::ghz_state(4), {0, 1}).matrix - expected).norm(), 1e-15);
}

TEST(ExactRdm, PartialTracesCompose) {
  const auto psi = shadowkit::testing::random_state(5, 3);
  const CMatrix rho01 = sim::exact_rdm(psi, {0, 1}).matrix;
  const CMatrix rho0 = sim::exact_rdm(psi, {0}).matrix;
  EXPECT_LT((sk::trace_out_last(rho01, 2) - rho0).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((sk::trace_out_first(rho01, 2) - sim::exact_rdm(psi, {1}).matrix).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(rho01.trace().real(), 1.0, 1e-12);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<CMatrix>(rho01).eigenvalues().minCoeff(), -1e-10);
}

TEST(ExactRdm, SubsystemCapIsEnforced) {
  const auto psi = sim::ghz_state(8);
  try {
    sim::exact_rdm(psi, {0, 1, 2, 3, 4, 5, 6});
    FAIL() << "expected SubsystemTooLarge";
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::SubsystemTooLarge);
  }
}

TEST(States, MakeStateRejectsUnnormalizedVectors) {
  EXPECT_THROW(sim::make_state(1, 2, CVector::Ones(2)), sk::Error);
  EXPECT_THROW(sim::make_state(2, 2, CVector::Ones(2) / std::sqrt(2.0)), sk::Error);
}

TEST(States, HashIsStableAndDistinguishing) {
  const auto a = sim::ghz_state(3);
  const auto b = sim::basis_state(2, {0, 0, 0});
  EXPECT_EQ(sim::state_hash(a), sim::state_hash(sim::ghz_state(3)));
  EXPECT_NE(sim::state_hash(a), sim::state_hash(b));
  EXPECT_EQ(sim::state_hash(a).size(), 16u);
}

TEST(Sampling, ZeroStateInZBasisGivesZPlus) {
  const auto shadow = sim::sample_shadow(sim::basis_state(2, {0}), 30000, 17);
  std::size_t z_count = 0;
  for (std::size_t t = 0; t < shadow.num_snapshots(); ++t) {
    const auto s = shadow.symbol(t, 0);
    if (sk::shadows::basis_of(s) == sk::shadows::PauliBasis::Z) {
      ++z_count;
      EXPECT_EQ(s, sk::shadows::SnapshotSymbol::ZPlus);
    }
  }
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(30000 * p * (1 - p));
  EXPECT_NEAR(static_cast<double>(z_count), 30000 * p, 3 * sigma);
}

TEST(Sampling, BellStateIsPerfectlyCorrelatedInZ) {
  const auto shadow = sim::sample_shadow(sim::ghz_state(2), 5000, 3);
  std::size_t both_z = 0;
  for (std::size_t t = 0; t < shadow.num_snapshots(); ++t) {
    const auto a = shadow.symbol(t, 0);
    const auto b = shadow.symbol(t, 1);
    if (sk::shadows::basis_of(a) == sk::shadows::PauliBasis::Z && sk::shadows::basis_of(b) == sk::shadows::PauliBasis::Z) {
      ++both_z;
      EXPECT_EQ(a, b);
    }
  }
  EXPECT_GT(both_z, 400u);
}

TEST(Sampling, BornFrequenciesMatchExactProbabilities) {
  const auto psi = shadowkit::testing::random_state(2, 21);
  const std::vector<std::uint8_t> bases = {1, 2};  // X on qubit 0, Y on qubit 1
  const auto probs = sim::measurement_probabilities(psi, bases);
  const auto shadow = sim::sample_shadow(psi, 100000, 5);
  std::array<double, 4> counts{};
  double total = 0.0;
  for (std::size_t t = 0; t < shadow.num_snapshots(); ++t) {
    const auto a = shadow.symbol(t, 0);
    const auto b = shadow.symbol(t, 1);
    if (static_cast<unsigned>(sk::shadows::basis_of(a)) != bases[0] ||
        static_cast<unsigned>(sk::shadows::basis_of(b)) != bases[1]) {
      continue;
    }
    counts[2 * sk::shadows::outcome_of(a) + sk::shadows::outcome_of(b)] += 1.0;
    total += 1.0;
  }
  for (int k = 0; k < 4; ++k) {
    const double p = probs[k];
    EXPECT_NEAR(counts[k] / total, p, 4.0 * std::sqrt(p * (1 - p) / total) + 1e-12) << "outcome " << k;
  }
  EXPECT_NEAR(probs.sum(), 1.0, 1e-12);
}

TEST(Sampling, DeterministicAcrossRunsAndThreadCounts) {
  const auto psi = shadowkit::testing::random_state(6, 4);
  sk::set_max_threads(1);
  const auto a = sim::sample_shadow(psi, 2000, 99);
  sk::set_max_threads(4);
  const auto b = sim::sample_shadow(psi, 2000, 99);
  sk::set_max_threads(0);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == sim::sample_shadow(psi, 2000, 100));
  EXPECT_EQ(a.provenance().seed, 99u);
}

TEST(Sampling, SnapshotsUseIndependentStreams) {
  // A longer run starts with exactly the snapshots of a shorter one.
  const auto psi = shadowkit::testing::random_state(3, 8);
  const auto short_run = sim::sample_shadow(psi, 50, 12);
  const auto long_run = sim::sample_shadow(psi, 80, 12);
  for (std::size_t t = 0; t < 50; ++t) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(short_run.symbol(t, i), long_run.symbol(t, i));
  }
}

TEST(Sampling, QutritStatesAreRejected) {
  try {
    sim::sample_shadow(sim::basis_state(3, {0, 1}), 10, 1);
    FAIL() << "expected UnsupportedLocalDim";
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::UnsupportedLocalDim);
  }
}

TEST(Serialization, SpecRoundTripsThroughJson) {
  const auto spec = sim::rydberg_chain(5, 1.2, 2.0);
  const auto back = sim::spec_from_json(nlohmann::json::parse(sim::to_json(spec).dump()));
  EXPECT_EQ(back.n, spec.n);
  EXPECT_EQ(back.family, spec.family);
  EXPECT_EQ(back.params, spec.params);
  EXPECT_EQ(back.physical_params, spec.physical_params);
  EXPECT_LT((dense(back) - dense(spec)).cwiseAbs().maxCoeff(), 1e-15);
}

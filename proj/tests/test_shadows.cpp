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
#include <filesystem>

#include "shadowkit/error.hpp"
#include "shadowkit/shadows.hpp"
#include "shadowkit/simulator.hpp"
#include "test_support.hpp"

namespace sk = shadowkit;
namespace sh = shadowkit::shadows;
namespace sim = shadowkit::simulator;
using sh::SnapshotSymbol;

namespace {

sh::ClassicalShadow random_shadow(std::size_t n, std::size_t T, std::uint64_t seed) {
  sk::CounterRng rng(seed, 1);
  std::vector<std::uint8_t> raw(n * T);
  for (auto& s : raw) s = static_cast<std::uint8_t>(rng.below(6));
  return sh::ClassicalShadow(n, T, raw);
}

}  // namespace

TEST(Snapshot, ZPlusIsDiag2Minus1) {
  const auto m = sh::snapshot_matrix(SnapshotSymbol::ZPlus);
  EXPECT_EQ(m(0, 0), sk::Complex(2.0));
  EXPECT_EQ(m(1, 1), sk::Complex(-1.0));
  EXPECT_EQ(m(0, 1), sk::Complex(0.0));
}

TEST(Snapshot, XPlusMatrix) {
  const auto m = sh::snapshot_matrix(SnapshotSymbol::XPlus);
  EXPECT_NEAR(std::abs(m(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) - 1.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) - 1.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) - 0.5), 0.0, 1e-15);
}

TEST(Snapshot, EverySymbolHasEigenvalues2AndMinus1) {
  for (std::size_t s = 0; s < sh::kNumSymbols; ++s) {
    const auto m = sh::snapshot_matrix(static_cast<SnapshotSymbol>(s));
    const auto ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(m).eigenvalues();
    EXPECT_NEAR(ev[0], -1.0, 1e-12);
    EXPECT_NEAR(ev[1], 2.0, 1e-12);
    EXPECT_NEAR(std::abs(m.trace() - 1.0), 0.0, 1e-12);
  }
}

TEST(Snapshot, SymbolEncodingFollowsBasisAndOutcome) {
  EXPECT_EQ(sh::symbol_for(sh::PauliBasis::X, 1), SnapshotSymbol::XMinus);
  EXPECT_EQ(sh::symbol_for(sh::PauliBasis::Y, 0), SnapshotSymbol::YPlus);
  EXPECT_EQ(sh::basis_of(SnapshotSymbol::YMinus), sh::PauliBasis::Y);
  EXPECT_EQ(sh::outcome_of(SnapshotSymbol::ZMinus), 1u);
}

TEST(Unbiasedness, BornWeightedSnapshotsReproduceTheState) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = sk::testing::random_state(1, seed);
    const Eigen::Matrix2cd rho = psi.amplitudes * psi.amplitudes.adjoint();
    Eigen::Matrix2cd avg = Eigen::Matrix2cd::Zero();
    for (std::size_t s = 0; s < sh::kNumSymbols; ++s) {
      const auto v = sh::symbol_state(static_cast<SnapshotSymbol>(s));
      const double born = std::norm(v.dot(psi.amplitudes));
      avg += (1.0 / 3.0) * born * sh::snapshot_matrix(static_cast<SnapshotSymbol>(s));
    }
    EXPECT_LT((avg - rho).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ShadowRdm, SingleSnapshot) {
  const sh::ClassicalShadow shadow = sh::ClassicalShadow::from_snapshots({{SnapshotSymbol::ZPlus, SnapshotSymbol::XMinus}});
  const auto rho = sh::shadow_rdm(shadow, {0}).matrix;
  EXPECT_LT((rho - sk::CMatrix(sh::snapshot_matrix(SnapshotSymbol::ZPlus))).norm(), 1e-15);
}

TEST(ShadowRdm, ZeroStateConverges) {
  const auto shadow = sim::sample_shadow(sim::basis_state(2, {0, 0, 0}), 100000, 1);
  const auto rho = sh::shadow_rdm(shadow, {0}).matrix;
  sk::CMatrix zero = sk::CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  EXPECT_LE(sk::trace_norm_distance(rho, zero), 0.05);
}

TEST(ShadowRdm, GhzMarginalConverges) {
  const auto psi = sim::ghz_state(4);
  const auto shadow = sim::sample_shadow(psi, 100000, 2);
  EXPECT_LE(sk::trace_norm_distance(sh::shadow_rdm(shadow, {0, 1}).matrix, sim::exact_rdm(psi, {0, 1}).matrix), 0.1);
}

TEST(ShadowRdm, HermitianUnitTraceButNotNecessarilyPositive) {
  const auto shadow = random_shadow(4, 3, 9);
  const auto rho = sh::shadow_rdm(shadow, {1, 3}).matrix;
  EXPECT_LE(sk::hermiticity_error(rho), 1e-14);
  EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-12);
}

TEST(ShadowRdm, SingleSnapshotIsIndefiniteUntilProjected) {
  const auto raw = sh::shadow_rdm(sh::ClassicalShadow(2, 1, {0, 2}), {0, 1});
  const auto before = Eigen::SelfAdjointEigenSolver<sk::CMatrix>(raw.matrix).eigenvalues();
  EXPECT_LT(before.minCoeff(), -0.5);
  const auto fixed = sk::psd_project(raw);
  const auto after = Eigen::SelfAdjointEigenSolver<sk::CMatrix>(fixed.matrix).eigenvalues();
  EXPECT_GE(after.minCoeff(), -1e-12);
  EXPECT_NEAR(std::abs(fixed.trace() - 1.0), 0.0, 1e-12);
  EXPECT_LE(sk::hermiticity_error(fixed.matrix), 1e-14);
}

TEST(ShadowRdm, ErrorsOnEmptyAndOversized) {
  try {
    sh::shadow_rdm(sh::ClassicalShadow(3, 0, {}), {0});
    FAIL();
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::EmptyShadow);
  }
  try {
    sh::shadow_rdm(random_shadow(8, 2, 1), {0, 1, 2, 3, 4, 5, 6});
    FAIL();
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::SubsystemTooLarge);
  }
}

TEST(ShadowRdm, ErrorDecaysAsInverseSquareRootOfT) {
  const auto psi = sk::testing::random_state(3, 5);
  const auto exact = sim::exact_rdm(psi, {0, 2}).matrix;
  std::vector<double> logs_t;
  std::vector<double> logs_e;
  for (std::size_t T : {100u, 1000u, 10000u}) {
    double mean = 0.0;
    const int seeds = 40;
    for (int s = 0; s < seeds; ++s) {
      const auto shadow = sim::sample_shadow(psi, T, 1000 * T + s);
      mean += sk::trace_norm_distance(sh::shadow_rdm(shadow, {0, 2}).matrix, exact) / seeds;
    }
    logs_t.push_back(std::log(static_cast<double>(T)));
    logs_e.push_back(std::log(mean));
  }
  const double slope = (logs_e.back() - logs_e.front()) / (logs_t.back() - logs_t.front());
  EXPECT_GE(slope, -0.6);
  EXPECT_LE(slope, -0.4);
}

TEST(SnapshotCount, SnapshotCountFormula) {
  const double expected = (8.0 / 3.0) * 144.0 * (2.0 * (std::log(8.0) + std::log(12.0)) + std::log(10.0)) / 0.0625;
  EXPECT_EQ(sh::snapshot_count_bound(8, 2, 0.25, 0.1), static_cast<std::size_t>(std::ceil(expected)));
  EXPECT_THROW(sh::snapshot_count_bound(8, 2, 0.0, 0.1), sk::Error);
}

TEST(Estimator, ZOnZPlusIsThree) {
  const auto shadow = sh::ClassicalShadow::from_snapshots({{SnapshotSymbol::ZPlus}});
  sh::ProductFactors f;
  f[0] = sk::CMatrix(sim::pauli_z());
  EXPECT_NEAR(sh::estimate_product_observable(shadow, f), 3.0, 1e-15);
}

TEST(Estimator, BornAverageForZeroStateIsExactlyOne) {
  double avg = 0.0;
  const sh::ProductFactors f = {{0, Eigen::Matrix2cd(sk::CMatrix(sim::pauli_z()))}};
  for (std::size_t s = 0; s < sh::kNumSymbols; ++s) {
    const auto sym = static_cast<SnapshotSymbol>(s);
    const double born = std::norm(sh::symbol_state(sym)[0]);
    avg += born / 3.0 * sh::estimate_product_observable(sh::ClassicalShadow::from_snapshots({{sym}}), f);
  }
  EXPECT_NEAR(avg, 1.0, 1e-12);
}

TEST(Estimator, PlusStateXConverges) {
  const auto plus = sim::product_state({sk::CVector::Constant(2, sk::Complex(1.0, 0.0))});
  const auto shadow = sim::sample_shadow(plus, 100000, 4);
  const sh::ProductFactors f = {{0, Eigen::Matrix2cd(sk::CMatrix(sim::pauli_x()))}};
  EXPECT_NEAR(sh::estimate_product_observable(shadow, f), 1.0, 0.05);
}

TEST(Estimator, SumOfZOnZeroOneApproachesZero) {
  const auto shadow = sim::sample_shadow(sim::basis_state(2, {0, 1}), 100000, 6);
  const Eigen::Matrix2cd z = sk::CMatrix(sim::pauli_z());
  const std::vector<sh::ProductTerm> terms = {{{{0, z}}, 1.0}, {{{1, z}}, 1.0}};
  EXPECT_NEAR(sh::estimate_observable_sum(shadow, terms), 0.0, 0.05);
  EXPECT_EQ(sh::estimate_observable_sum(shadow, {}), 0.0);
}

TEST(Estimator, BellCorrelatorMatchesExactValue) {
  const auto bell = sim::ghz_state(2);
  const auto shadow = sim::sample_shadow(bell, 100000, 8);
  std::vector<sh::ProductTerm> terms;
  std::vector<sim::LocalTerm> exact_terms;
  for (const sk::CMatrix& p : {sim::pauli_x(), sim::pauli_y(), sim::pauli_z()}) {
    terms.push_back({{{0, Eigen::Matrix2cd(p)}, {1, Eigen::Matrix2cd(p)}}, 1.0 / 3.0});
    exact_terms.push_back({{0, 1}, sk::kron(p, p), 1.0 / 3.0});
  }
  const double exact = sim::exact_expectation(bell, exact_terms);
  EXPECT_NEAR(exact, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(sh::estimate_observable_sum(shadow, terms), exact, 0.1);
}

TEST(Estimator, AgreesWithTraceAgainstShadowRdm) {
  sk::CounterRng rng(77, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto shadow = random_shadow(5, 40, 100 + trial);
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    std::vector<std::size_t> sites;
    sh::ProductFactors factors;
    sk::CMatrix full = sk::CMatrix::Identity(1, 1);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t site = (j * 2 + static_cast<std::size_t>(trial)) % 5;
      sites.push_back(site);
      Eigen::Matrix2cd o;
      o << rng.normal(), sk::Complex(rng.normal(), rng.normal()), 0.0, rng.normal();
      o(1, 0) = std::conj(o(0, 1));
      factors[site] = o;
    }
    std::sort(sites.begin(), sites.end());
    for (std::size_t s : sites) full = sk::kron(full, sk::CMatrix(factors[s]));
    const double via_rdm = (full * sh::shadow_rdm(shadow, sites).matrix).trace().real();
    EXPECT_NEAR(sh::estimate_product_observable(shadow, factors), via_rdm, 1e-10);
  }
}

TEST(Format, SerializeRoundTrip) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto shadow = random_shadow(3 + seed, 17 + seed, seed);
    EXPECT_EQ(sh::deserialize(sh::serialize(shadow)), shadow);
  }
}

TEST(Format, PayloadBytesFollowTheHeader) {
  const auto shadow = sh::ClassicalShadow::from_snapshots({{SnapshotSymbol::ZPlus, SnapshotSymbol::XMinus}});
  const auto bytes = sh::serialize(shadow);
  ASSERT_EQ(bytes.size(), sh::kHeaderBytes + 2);
  EXPECT_EQ(bytes[sh::kHeaderBytes], 0x00);
  EXPECT_EQ(bytes[sh::kHeaderBytes + 1], 0x03);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SHDW");
}

TEST(Format, CorruptedInputIsRejected) {
  auto bytes = sh::serialize(random_shadow(2, 3, 1));
  auto bad_length = bytes;
  bad_length[6] = 0xff;  // n field
  try {
    sh::deserialize(bad_length);
    FAIL();
  } catch (const sk::Error& e) {
    EXPECT_TRUE(e.code() == sk::ErrorCode::MalformedHeader || e.code() == sk::ErrorCode::TruncatedPayload);
  }
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  try {
    sh::deserialize(bad_magic);
    FAIL();
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::MalformedHeader);
  }
  auto truncated = bytes;
  truncated.pop_back();
  try {
    sh::deserialize(truncated);
    FAIL();
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::TruncatedPayload);
  }
  auto bad_symbol = bytes;
  bad_symbol.back() = 6;
  try {
    sh::deserialize(bad_symbol);
    FAIL();
  } catch (const sk::Error& e) {
    EXPECT_EQ(e.code(), sk::ErrorCode::InvalidSymbol);
  }
}

TEST(Format, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "shadowkit_test_roundtrip.shdw").string();
  const auto shadow = random_shadow(6, 11, 3);
  sh::write_shadow_file(path, shadow);
  EXPECT_EQ(sh::read_shadow_file(path), shadow);
  std::filesystem::remove(path);
  EXPECT_THROW(sh::read_shadow_file(path), sk::Error);
}

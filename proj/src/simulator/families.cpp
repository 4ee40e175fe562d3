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

#include "shadowkit/error.hpp"
#include "shadowkit/random.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::simulator {

namespace {

void expect_params(std::span<const double> values, std::size_t m, const char* family) {
  if (values.size() != m) {
    fail(ErrorCode::DimensionMismatch, std::string(family) + " takes " + std::to_string(m) + " parameters, got " +
                                           std::to_string(values.size()));
  }
}

void check_normalized(std::span<const double> x) {
  for (double v : x) {
    if (!(v >= -1.0 && v <= 1.0)) fail(ErrorCode::InvalidArgument, "normalized parameter outside [-1, 1]");
  }
}

void record_params(HamiltonianSpec& spec, std::span<const double> physical, std::vector<ParameterAxis> box) {
  spec.physical_params.assign(physical.begin(), physical.end());
  spec.params.clear();
  for (std::size_t k = 0; k < physical.size(); ++k) spec.params.push_back(box[k].normalize(physical[k]));
  spec.physical_box = std::move(box);
}

CMatrix two_site(const CMatrix& a, const CMatrix& b) { return kron(a, b); }

CMatrix projector_one() { return (CMatrix(2, 2) << 0.0, 0.0, 0.0, 1.0).finished(); }

CMatrix heisenberg_bond(double zz_weight) {
  return two_site(pauli_x(), pauli_x()) + two_site(pauli_y(), pauli_y()) + zz_weight * two_site(pauli_z(), pauli_z());
}

}  // namespace

HamiltonianSpec TfimFamily::from_physical(std::span<const double> physical) const {
  expect_params(physical, 1, "TFIM");
  HamiltonianSpec spec;
  spec.n = n;
  spec.local_dim = 2;
  spec.family = Family::TFIM;
  const double h = physical[0];
  const CMatrix zz = two_site(pauli_z(), pauli_z());
  const std::size_t bonds = periodic && n > 2 ? n : n - 1;
  for (std::size_t i = 0; i < bonds; ++i) {
    if (coupling != 0.0) spec.terms.push_back({{i, (i + 1) % n}, zz, -coupling});
  }
  for (std::size_t i = 0; i < n; ++i) spec.terms.push_back({{i}, pauli_x(), -h});
  record_params(spec, physical, {field});
  return spec;
}

HamiltonianSpec TfimFamily::from_normalized(std::span<const double> x) const {
  expect_params(x, 1, "TFIM");
  check_normalized(x);
  const double h = field.denormalize(x[0]);
  return from_physical(std::span<const double>(&h, 1));
}

HamiltonianSpec RydbergChainFamily::from_physical(std::span<const double> physical) const {
  expect_params(physical, 2, "RydbergChain");
  HamiltonianSpec spec;
  spec.n = n;
  spec.local_dim = 2;
  spec.family = Family::RydbergChain;
  const double omega = 1.0;
  const double delta = physical[0] * omega;
  const double rb = physical[1];
  const CMatrix occupation = projector_one();
  const CMatrix nn = two_site(occupation, occupation);
  for (std::size_t i = 0; i < n; ++i) {
    spec.terms.push_back({{i}, pauli_x(), omega / 2.0});
    spec.terms.push_back({{i}, occupation, -delta});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && j - i <= interaction_range; ++j) {
      const double v = omega * std::pow(rb / static_cast<double>(j - i), 6);
      spec.terms.push_back({{i, j}, nn, v});
    }
  }
  record_params(spec, physical, {detuning, blockade});
  return spec;
}

HamiltonianSpec RydbergChainFamily::from_normalized(std::span<const double> x) const {
  expect_params(x, 2, "RydbergChain");
  check_normalized(x);
  const double physical[2] = {detuning.denormalize(x[0]), blockade.denormalize(x[1])};
  return from_physical(physical);
}

std::vector<std::pair<std::size_t, std::size_t>> Heisenberg2DFamily::bonds() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < ly; ++r) {
    for (std::size_t c = 0; c < lx; ++c) {
      const std::size_t site = r * lx + c;
      if (c + 1 < lx) out.emplace_back(site, site + 1);
      if (r + 1 < ly) out.emplace_back(site, site + lx);
    }
  }
  return out;
}

HamiltonianSpec Heisenberg2DFamily::from_physical(std::span<const double> physical) const {
  const auto edges = bonds();
  expect_params(physical, edges.size(), "Heisenberg2D");
  HamiltonianSpec spec;
  spec.n = lx * ly;
  spec.local_dim = 2;
  spec.family = Family::Heisenberg2D;
  const CMatrix bond = heisenberg_bond(1.0);
  for (std::size_t b = 0; b < edges.size(); ++b) {
    spec.terms.push_back({{edges[b].first, edges[b].second}, bond, physical[b]});
  }
  std::vector<ParameterAxis> box;
  for (std::size_t b = 0; b < edges.size(); ++b) {
    ParameterAxis axis = coupling;
    axis.name = "J_" + std::to_string(edges[b].first) + "_" + std::to_string(edges[b].second);
    box.push_back(axis);
  }
  record_params(spec, physical, std::move(box));
  return spec;
}

HamiltonianSpec Heisenberg2DFamily::from_normalized(std::span<const double> x) const {
  expect_params(x, num_params(), "Heisenberg2D");
  check_normalized(x);
  std::vector<double> physical;
  for (double v : x) physical.push_back(coupling.denormalize(v));
  return from_physical(physical);
}

HamiltonianSpec Heisenberg2DFamily::sample(std::uint64_t seed) const {
  CounterRng rng(seed, 0);
  std::vector<double> couplings;
  for (std::size_t b = 0; b < num_params(); ++b) {
    couplings.push_back(coupling.low + rng.uniform() * (coupling.high - coupling.low));
  }
  return from_physical(couplings);
}

HamiltonianSpec XXZBondAlternatingFamily::from_physical(std::span<const double> physical) const {
  expect_params(physical, 2, "XXZBondAlt");
  HamiltonianSpec spec;
  spec.n = n;
  spec.local_dim = 2;
  spec.family = Family::XXZBondAlt;
  const double jprime = physical[0] * coupling;
  const CMatrix bond = heisenberg_bond(physical[1]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    spec.terms.push_back({{i, i + 1}, bond, i % 2 == 0 ? coupling : jprime});
  }
  if (pin_strength != 0.0) spec.terms.push_back({{0}, pauli_z(), pin_strength * coupling});
  record_params(spec, physical, {ratio, anisotropy});
  return spec;
}

HamiltonianSpec XXZBondAlternatingFamily::from_normalized(std::span<const double> x) const {
  expect_params(x, 2, "XXZBondAlt");
  check_normalized(x);
  const double physical[2] = {ratio.denormalize(x[0]), anisotropy.denormalize(x[1])};
  return from_physical(physical);
}

HamiltonianSpec AkltFamily::build() const {
  if (n < 2) fail(ErrorCode::InvalidArgument, "AKLT chain needs at least two sites");
  HamiltonianSpec spec;
  spec.n = n;
  spec.local_dim = 3;
  spec.family = Family::AKLT;
  const CMatrix dot = kron(spin1_x(), spin1_x()) + kron(spin1_y(), spin1_y()) + kron(spin1_z(), spin1_z());
  CMatrix bond = dot + (dot * dot) / 3.0;
  bond = 0.5 * (bond + bond.adjoint());
  const std::size_t bonds = periodic && n > 2 ? n : n - 1;
  for (std::size_t i = 0; i < bonds; ++i) spec.terms.push_back({{i, (i + 1) % n}, bond, 1.0});
  return spec;
}

HamiltonianSpec tfim_family(std::size_t n, double field, double coupling) {
  TfimFamily family;
  family.n = n;
  family.coupling = coupling;
  return family.from_physical(std::span<const double>(&field, 1));
}

HamiltonianSpec rydberg_chain(std::size_t n, double detuning_over_omega, double blockade_over_spacing) {
  RydbergChainFamily family;
  family.n = n;
  const double physical[2] = {detuning_over_omega, blockade_over_spacing};
  return family.from_physical(physical);
}

HamiltonianSpec heisenberg2d(std::size_t lx, std::size_t ly, std::uint64_t seed) {
  Heisenberg2DFamily family;
  family.lx = lx;
  family.ly = ly;
  return family.sample(seed);
}

HamiltonianSpec xxz_bond_alternating(std::size_t n, double jprime_over_j, double delta) {
  XXZBondAlternatingFamily family;
  family.n = n;
  const double physical[2] = {jprime_over_j, delta};
  return family.from_physical(physical);
}

HamiltonianSpec aklt_spin1(std::size_t n, bool periodic) { return AkltFamily{n, periodic}.build(); }

std::size_t family_num_params(Family family, std::size_t n) {
  switch (family) {
    case Family::TFIM: return 1;
    case Family::RydbergChain: return 2;
    case Family::XXZBondAlt: return 2;
    case Family::AKLT: return 0;
    case Family::Heisenberg2D: {
      const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
      return Heisenberg2DFamily{side, side, {}}.num_params();
    }
    case Family::Custom: break;
  }
  fail(ErrorCode::InvalidArgument, "family has no parameterization");
}

HamiltonianSpec family_from_normalized(Family family, std::size_t n, std::span<const double> x) {
  switch (family) {
    case Family::TFIM: return TfimFamily{n}.from_normalized(x);
    case Family::RydbergChain: return RydbergChainFamily{n}.from_normalized(x);
    case Family::XXZBondAlt: return XXZBondAlternatingFamily{n}.from_normalized(x);
    case Family::AKLT: return AkltFamily{n}.build();
    case Family::Heisenberg2D: {
      const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
      if (side * side != n) fail(ErrorCode::InvalidArgument, "Heisenberg2D expects a square site count");
      Heisenberg2DFamily lattice;
      lattice.lx = side;
      lattice.ly = side;
      return lattice.from_normalized(x);
    }
    case Family::Custom: break;
  }
  fail(ErrorCode::InvalidArgument, "Custom family cannot be built from parameters");
}

}  // namespace shadowkit::simulator

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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shadowkit/linalg.hpp"

namespace shadowkit::shadows {

/// Post-measurement single-qubit stabilizer state. The numeric values are
/// the on-disk encoding and must not change.
enum class SnapshotSymbol : std::uint8_t {
  ZPlus = 0,   // |0>
  ZMinus = 1,  // |1>
  XPlus = 2,   // |+>
  XMinus = 3,  // |->
  YPlus = 4,   // |i+>
  YMinus = 5,  // |i->
};

inline constexpr std::size_t kNumSymbols = 6;

enum class PauliBasis : std::uint8_t { Z = 0, X = 1, Y = 2 };

constexpr SnapshotSymbol symbol_for(PauliBasis basis, unsigned outcome) {
  return static_cast<SnapshotSymbol>(2 * static_cast<unsigned>(basis) + (outcome & 1u));
}
constexpr PauliBasis basis_of(SnapshotSymbol s) { return static_cast<PauliBasis>(static_cast<unsigned>(s) / 2); }
constexpr unsigned outcome_of(SnapshotSymbol s) { return static_cast<unsigned>(s) % 2; }

/// Unit vector |s> in C^2.
Eigen::Vector2cd symbol_state(SnapshotSymbol s);

/// Single-qubit snapshot 3|s><s| - I.
Eigen::Matrix2cd snapshot_matrix(SnapshotSymbol s);

struct Provenance {
  std::uint64_t seed = 0;
  std::string state_hash;
};

/// n x T record of randomized Pauli measurement outcomes, one byte per entry.
/// Immutable after construction.
class ClassicalShadow {
 public:
  ClassicalShadow() = default;
  /// `symbols` is t-major: all qubits of snapshot 0, then snapshot 1, ...
  ClassicalShadow(std::size_t num_qubits, std::size_t num_snapshots, std::vector<std::uint8_t> symbols,
                  Provenance provenance = {});

  static ClassicalShadow from_snapshots(const std::vector<std::vector<SnapshotSymbol>>& snapshots);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_snapshots() const { return T_; }

  SnapshotSymbol symbol(std::size_t t, std::size_t qubit) const {
    return static_cast<SnapshotSymbol>(symbols_[t * n_ + qubit]);
  }
  std::span<const std::uint8_t> snapshot(std::size_t t) const { return {symbols_.data() + t * n_, n_}; }

  /// t-major storage (file payload order).
  const std::vector<std::uint8_t>& raw() const { return symbols_; }
  /// Qubit-major copy: planes()[i * T + t].
  const std::vector<std::uint8_t>& planes() const { return planes_; }

  const Provenance& provenance() const { return provenance_; }

  bool operator==(const ClassicalShadow& other) const {
    return n_ == other.n_ && T_ == other.T_ && symbols_ == other.symbols_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t T_ = 0;
  std::vector<std::uint8_t> symbols_;
  std::vector<std::uint8_t> planes_;
  Provenance provenance_;
};

inline constexpr std::size_t kDefaultMaxSubsystem = 6;

/// (1/T) sum_t tensor_{i in subsystem} snapshot_matrix(symbol(t, i)); the
/// first listed site is the most significant tensor factor.
DensityMatrix shadow_rdm(const ClassicalShadow& shadow, const std::vector<std::size_t>& subsystem,
                         std::size_t max_subsystem = kDefaultMaxSubsystem);

/// Snapshots sufficient for every r-body RDM to lie within trace distance
/// eps with probability 1 - delta:
/// ceil((8/3) 12^r (r (ln n + ln 12) + ln(1/delta)) / eps^2).
std::size_t snapshot_count_bound(std::size_t n, std::size_t r, double eps, double delta);

using ProductFactors = std::map<std::size_t, Eigen::Matrix2cd>;

struct ProductTerm {
  ProductFactors factors;
  double coefficient = 1.0;
};

/// Tr(factor * snapshot_matrix(s)) for all six symbols.
std::array<double, kNumSymbols> factor_traces(const Eigen::Matrix2cd& factor);

/// (1/T) sum_t prod_i Tr(O_i sigma_i^(t)).
double estimate_product_observable(const ClassicalShadow& shadow, const ProductFactors& factors,
                                   std::size_t max_subsystem = kDefaultMaxSubsystem);

double estimate_observable_sum(const ClassicalShadow& shadow, const std::vector<ProductTerm>& terms,
                               std::size_t max_subsystem = kDefaultMaxSubsystem);

// Binary format (little-endian):
//   "SHDW" | u16 version=1 | u32 n | u32 T | u64 seed | n*T payload bytes
// Payload is t-major with one symbol (0..5) per byte.
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 4 + 2 + 4 + 4 + 8;

std::vector<std::uint8_t> serialize(const ClassicalShadow& shadow);
ClassicalShadow deserialize(std::span<const std::uint8_t> bytes);

void write_shadow_file(const std::string& path, const ClassicalShadow& shadow);
ClassicalShadow read_shadow_file(const std::string& path);

}  // namespace shadowkit::shadows

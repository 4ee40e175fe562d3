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

#include "shadowkit/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>

#include "shadowkit/error.hpp"

namespace shadowkit::shadows {

Eigen::Vector2cd symbol_state(SnapshotSymbol s) {
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  switch (s) {
    case SnapshotSymbol::ZPlus: return {1.0, 0.0};
    case SnapshotSymbol::ZMinus: return {0.0, 1.0};
    case SnapshotSymbol::XPlus: return {r, r};
    case SnapshotSymbol::XMinus: return {r, -r};
    case SnapshotSymbol::YPlus: return {r, i * r};
    case SnapshotSymbol::YMinus: return {r, -i * r};
  }
  fail(ErrorCode::InvalidSymbol, "symbol out of range");
}

Eigen::Matrix2cd snapshot_matrix(SnapshotSymbol s) {
  // Written out entrywise so the diagonal and the +-3/2 entries are exact.
  const Complex i(0.0, 1.0);
  switch (s) {
    case SnapshotSymbol::ZPlus: return (Eigen::Matrix2cd() << 2.0, 0.0, 0.0, -1.0).finished();
    case SnapshotSymbol::ZMinus: return (Eigen::Matrix2cd() << -1.0, 0.0, 0.0, 2.0).finished();
    case SnapshotSymbol::XPlus: return (Eigen::Matrix2cd() << 0.5, 1.5, 1.5, 0.5).finished();
    case SnapshotSymbol::XMinus: return (Eigen::Matrix2cd() << 0.5, -1.5, -1.5, 0.5).finished();
    case SnapshotSymbol::YPlus: return (Eigen::Matrix2cd() << 0.5, -1.5 * i, 1.5 * i, 0.5).finished();
    case SnapshotSymbol::YMinus: return (Eigen::Matrix2cd() << 0.5, 1.5 * i, -1.5 * i, 0.5).finished();
  }
  fail(ErrorCode::InvalidSymbol, "symbol out of range");
}

ClassicalShadow::ClassicalShadow(std::size_t num_qubits, std::size_t num_snapshots,
                                 std::vector<std::uint8_t> symbols, Provenance provenance)
    : n_(num_qubits), T_(num_snapshots), symbols_(std::move(symbols)), provenance_(std::move(provenance)) {
  if (symbols_.size() != n_ * T_) {
    fail(ErrorCode::ShapeMismatch, "shadow payload has " + std::to_string(symbols_.size()) + " entries, expected " +
                                       std::to_string(n_ * T_));
  }
  for (std::uint8_t v : symbols_) {
    if (v >= kNumSymbols) fail(ErrorCode::InvalidSymbol, "symbol byte " + std::to_string(v) + " outside 0..5");
  }
  planes_.resize(symbols_.size());
  for (std::size_t t = 0; t < T_; ++t) {
    for (std::size_t i = 0; i < n_; ++i) planes_[i * T_ + t] = symbols_[t * n_ + i];
  }
}

ClassicalShadow ClassicalShadow::from_snapshots(const std::vector<std::vector<SnapshotSymbol>>& snapshots) {
  const std::size_t n = snapshots.empty() ? 0 : snapshots.front().size();
  std::vector<std::uint8_t> raw;
  raw.reserve(n * snapshots.size());
  for (const auto& snap : snapshots) {
    if (snap.size() != n) fail(ErrorCode::ShapeMismatch, "snapshots have differing qubit counts");
    for (SnapshotSymbol s : snap) raw.push_back(static_cast<std::uint8_t>(s));
  }
  return ClassicalShadow(n, snapshots.size(), std::move(raw));
}

namespace {

void check_subsystem(const ClassicalShadow& shadow, const std::vector<std::size_t>& sites, std::size_t cap) {
  if (shadow.num_snapshots() == 0) fail(ErrorCode::EmptyShadow, "shadow has no snapshots");
  if (sites.size() > cap) {
    fail(ErrorCode::SubsystemTooLarge,
         std::to_string(sites.size()) + " sites exceeds the cap of " + std::to_string(cap));
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] >= shadow.num_qubits()) {
      fail(ErrorCode::InvalidArgument, "site " + std::to_string(sites[k]) + " outside shadow of " +
                                           std::to_string(shadow.num_qubits()) + " qubits");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (sites[j] == sites[k]) fail(ErrorCode::InvalidArgument, "repeated site in subsystem");
    }
  }
}

}  // namespace

DensityMatrix shadow_rdm(const ClassicalShadow& shadow, const std::vector<std::size_t>& subsystem,
                         std::size_t max_subsystem) {
  check_subsystem(shadow, subsystem, max_subsystem);
  const std::size_t k = subsystem.size();
  const std::size_t T = shadow.num_snapshots();

  // Snapshots only enter through their symbol tuple on the subsystem, so
  // bucket first and build each distinct tensor product once.
  std::size_t num_codes = 1;
  for (std::size_t j = 0; j < k; ++j) num_codes *= kNumSymbols;
  std::vector<std::uint64_t> counts(num_codes, 0);
  for (std::size_t t = 0; t < T; ++t) {
    std::size_t code = 0;
    for (std::size_t site : subsystem) code = code * kNumSymbols + static_cast<std::size_t>(shadow.symbol(t, site));
    ++counts[code];
  }

  std::array<CMatrix, kNumSymbols> singles;
  for (std::size_t s = 0; s < kNumSymbols; ++s) singles[s] = snapshot_matrix(static_cast<SnapshotSymbol>(s));

  const Eigen::Index dim = Eigen::Index{1} << k;
  CMatrix acc = CMatrix::Zero(dim, dim);
  std::vector<std::size_t> digits(k);
  for (std::size_t code = 0; code < num_codes; ++code) {
    if (counts[code] == 0) continue;
    std::size_t rest = code;
    for (std::size_t j = k; j-- > 0;) {
      digits[j] = rest % kNumSymbols;
      rest /= kNumSymbols;
    }
    CMatrix product = CMatrix::Identity(1, 1);
    for (std::size_t j = 0; j < k; ++j) product = kron(product, singles[digits[j]]);
    acc += static_cast<double>(counts[code]) * product;
  }
  return {acc / static_cast<double>(T)};
}

std::size_t snapshot_count_bound(std::size_t n, std::size_t r, double eps, double delta) {
  if (n == 0 || r == 0) fail(ErrorCode::InvalidArgument, "n and r must be positive");
  if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0)) fail(ErrorCode::InvalidArgument, "need eps > 0, delta in (0,1)");
  const double rr = static_cast<double>(r);
  const double count = (8.0 / 3.0) * std::pow(12.0, rr) *
                       (rr * (std::log(static_cast<double>(n)) + std::log(12.0)) + std::log(1.0 / delta)) / (eps * eps);
  return static_cast<std::size_t>(std::ceil(count));
}

std::array<double, kNumSymbols> factor_traces(const Eigen::Matrix2cd& factor) {
  std::array<double, kNumSymbols> out{};
  for (std::size_t s = 0; s < kNumSymbols; ++s) {
    out[s] = (factor * snapshot_matrix(static_cast<SnapshotSymbol>(s))).trace().real();
  }
  return out;
}

double estimate_product_observable(const ClassicalShadow& shadow, const ProductFactors& factors,
                                   std::size_t max_subsystem) {
  std::vector<std::size_t> sites;
  std::vector<std::array<double, kNumSymbols>> tables;
  sites.reserve(factors.size());
  for (const auto& [site, factor] : factors) {
    sites.push_back(site);
    tables.push_back(factor_traces(factor));
  }
  check_subsystem(shadow, sites, max_subsystem);
  const std::size_t T = shadow.num_snapshots();
  double sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    double product = 1.0;
    for (std::size_t j = 0; j < sites.size(); ++j) {
      product *= tables[j][static_cast<std::size_t>(shadow.symbol(t, sites[j]))];
    }
    sum += product;
  }
  return sum / static_cast<double>(T);
}

double estimate_observable_sum(const ClassicalShadow& shadow, const std::vector<ProductTerm>& terms,
                               std::size_t max_subsystem) {
  double total = 0.0;
  for (const auto& term : terms) {
    total += term.coefficient * estimate_product_observable(shadow, term.factors, max_subsystem);
  }
  return total;
}

namespace {

template <typename U>
std::size_t put_le(std::vector<std::uint8_t>& out, std::size_t offset, U value) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out[offset + b] = static_cast<std::uint8_t>(value >> (8 * b));
  return offset + sizeof(U);
}

template <typename U>
U get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) value |= static_cast<U>(bytes[offset + b]) << (8 * b);
  return value;
}

constexpr std::uint8_t kMagic[4] = {'S', 'H', 'D', 'W'};

}  // namespace

std::vector<std::uint8_t> serialize(const ClassicalShadow& shadow) {
  // Sized up front and filled by index; GCC 11 misreports inserts into an
  // empty vector as overflows.
  std::vector<std::uint8_t> out(kHeaderBytes + shadow.raw().size());
  std::copy(std::begin(kMagic), std::end(kMagic), out.begin());
  std::size_t at = put_le<std::uint16_t>(out, sizeof(kMagic), kFormatVersion);
  at = put_le<std::uint32_t>(out, at, static_cast<std::uint32_t>(shadow.num_qubits()));
  at = put_le<std::uint32_t>(out, at, static_cast<std::uint32_t>(shadow.num_snapshots()));
  at = put_le<std::uint64_t>(out, at, shadow.provenance().seed);
  std::copy(shadow.raw().begin(), shadow.raw().end(), out.begin() + static_cast<std::ptrdiff_t>(at));
  return out;
}

ClassicalShadow deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) fail(ErrorCode::MalformedHeader, "stream shorter than the header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    fail(ErrorCode::MalformedHeader, "bad magic");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kFormatVersion) fail(ErrorCode::MalformedHeader, "unsupported version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(bytes, 6);
  const auto T = get_le<std::uint32_t>(bytes, 10);
  const auto seed = get_le<std::uint64_t>(bytes, 14);
  if (n == 0) fail(ErrorCode::MalformedHeader, "qubit count is zero");
  const std::uint64_t expected = static_cast<std::uint64_t>(n) * T;
  const std::uint64_t available = bytes.size() - kHeaderBytes;
  if (available < expected) {
    fail(ErrorCode::TruncatedPayload,
         "payload has " + std::to_string(available) + " bytes, header declares " + std::to_string(expected));
  }
  if (available > expected) {
    fail(ErrorCode::MalformedHeader, "header declares " + std::to_string(expected) + " payload bytes but " +
                                         std::to_string(available) + " follow");
  }
  std::vector<std::uint8_t> payload(bytes.begin() + kHeaderBytes, bytes.end());
  return ClassicalShadow(n, T, std::move(payload), Provenance{seed, {}});
}

void write_shadow_file(const std::string& path, const ClassicalShadow& shadow) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  const auto bytes = serialize(shadow);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

ClassicalShadow read_shadow_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace shadowkit::shadows

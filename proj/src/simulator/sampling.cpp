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
#include "shadowkit/simd.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::simulator {

namespace {

// Rows map the measured eigenbasis onto the computational basis: H for X,
// H S^dagger for Y.
const Complex* rotation_for(std::uint8_t basis) {
  static const double r = 1.0 / std::sqrt(2.0);
  static const Complex kX[4] = {r, r, r, -r};
  static const Complex kY[4] = {r, Complex(0.0, -r), r, Complex(0.0, r)};
  switch (basis) {
    case 1: return kX;
    case 2: return kY;
    default: return nullptr;
  }
}

std::size_t draw_index(const RVector& probabilities, double u) {
  double running = 0.0;
  std::size_t last_positive = 0;
  for (Eigen::Index k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_positive = static_cast<std::size_t>(k);
    running += probabilities[k];
    if (u < running) return last_positive;
  }
  return last_positive;  // u landed in the rounding slack above the total
}

class ShadowSampler {
 public:
  ShadowSampler(const std::vector<const StateVector*>& members, std::size_t T) : members_(members) {
    n_ = members.front()->n;
    std::size_t settings = 1;
    for (std::size_t i = 0; i < n_; ++i) settings *= 3;
    // Precompute every basis distribution when that is cheaper than rotating
    // once per snapshot; both paths call measurement_probabilities.
    cached_ = n_ <= 8 && 4 * T >= settings;
    if (cached_) {
      cache_.resize(members.size());
      for (std::size_t m = 0; m < members.size(); ++m) {
        cache_[m].resize(settings);
        parallel_for(settings, [&, m](std::size_t key) {
          std::vector<std::uint8_t> bases(n_);
          std::size_t rest = key;
          for (std::size_t i = n_; i-- > 0;) {
            bases[i] = static_cast<std::uint8_t>(rest % 3);
            rest /= 3;
          }
          cache_[m][key] = measurement_probabilities(*members_[m], bases);
        });
      }
    }
  }

  void draw(std::uint64_t seed, std::size_t t, std::uint8_t* out) const {
    CounterRng rng(seed, t);
    const std::size_t member = members_.size() > 1 ? rng.below(static_cast<std::uint32_t>(members_.size())) : 0;
    std::vector<std::uint8_t> bases(n_);
    std::size_t key = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      bases[i] = static_cast<std::uint8_t>(rng.below(3));
      key = key * 3 + bases[i];
    }
    const double u = rng.uniform();
    std::size_t index = 0;
    if (cached_) {
      index = draw_index(cache_[member][key], u);
    } else {
      index = draw_index(measurement_probabilities(*members_[member], bases), u);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const auto bit = static_cast<std::uint8_t>((index >> (n_ - 1 - i)) & 1u);
      out[i] = static_cast<std::uint8_t>(2 * bases[i] + bit);
    }
  }

 private:
  std::vector<const StateVector*> members_;
  std::size_t n_ = 0;
  bool cached_ = false;
  std::vector<std::vector<RVector>> cache_;
};

shadows::ClassicalShadow sample_members(const std::vector<const StateVector*>& members, std::size_t T,
                                        std::uint64_t seed, std::string hash) {
  if (T == 0) fail(ErrorCode::InvalidArgument, "T must be at least 1");
  const std::size_t n = members.front()->n;
  for (const auto* m : members) {
    if (m->local_dim != 2) fail(ErrorCode::UnsupportedLocalDim, "shadows need qubits (local_dim 2)");
    if (m->n != n) fail(ErrorCode::DimensionMismatch, "multiplet members differ in size");
  }
  const ShadowSampler sampler(members, T);
  std::vector<std::uint8_t> symbols(n * T);
  parallel_for(T, [&](std::size_t t) { sampler.draw(seed, t, symbols.data() + t * n); });
  return shadows::ClassicalShadow(n, T, std::move(symbols), shadows::Provenance{seed, std::move(hash)});
}

}  // namespace

RVector measurement_probabilities(const StateVector& state, std::span<const std::uint8_t> bases) {
  if (state.local_dim != 2) fail(ErrorCode::UnsupportedLocalDim, "Pauli measurements need qubits");
  if (bases.size() != state.n) fail(ErrorCode::DimensionMismatch, "one basis per qubit required");
  CVector amps = state.amplitudes;
  const auto& kernels = simd::active();
  const std::size_t dim = state.dimension();
  for (std::size_t i = 0; i < state.n; ++i) {
    if (bases[i] > 2) fail(ErrorCode::InvalidArgument, "basis index must be 0, 1 or 2");
    const Complex* u = rotation_for(bases[i]);
    if (u == nullptr) continue;
    kernels.apply_2x2(amps.data(), dim, std::size_t{1} << (state.n - 1 - i), u);
  }
  return amps.cwiseAbs2();
}

shadows::ClassicalShadow sample_shadow(const StateVector& state, std::size_t T, std::uint64_t seed) {
  return sample_members({&state}, T, seed, state_hash(state));
}

shadows::ClassicalShadow sample_shadow(const GroundMultiplet& mixture, std::size_t T, std::uint64_t seed) {
  if (mixture.states.empty()) fail(ErrorCode::InvalidArgument, "empty multiplet");
  std::vector<const StateVector*> members;
  std::string hash;
  for (const auto& s : mixture.states) {
    members.push_back(&s);
    hash += state_hash(s);
  }
  return sample_members(members, T, seed, hash);
}

}  // namespace shadowkit::simulator

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
#include <sstream>

#include "shadowkit/error.hpp"
#include "shadowkit/kernels.hpp"

namespace shadowkit::kernels {

namespace {

struct Enumerator {
  std::size_t m;
  std::int64_t limit;  // floor(cutoff^2) as an integer budget
  std::size_t cap;
  double cutoff;
  std::vector<int> current;
  std::vector<std::vector<int>>* out;

  void fail_cap() const {
    std::ostringstream msg;
    msg << "wavevector count exceeds the cap of " << cap << " for m=" << m << ", cutoff=" << cutoff
        << " (bound (2m+1)^(cutoff^2) = " << wavevector_count_bound(m, cutoff) << ")";
    fail(ErrorCode::CountCapExceeded, msg.str());
  }

  void visit(std::size_t depth, std::int64_t budget) {
    if (depth == m) {
      if (out->size() >= cap) fail_cap();
      out->push_back(current);
      return;
    }
    const auto reach = static_cast<int>(std::floor(std::sqrt(static_cast<double>(budget))));
    for (int k = -reach; k <= reach; ++k) {
      const std::int64_t rest = budget - static_cast<std::int64_t>(k) * k;
      if (rest < 0) continue;
      current[depth] = k;
      visit(depth + 1, rest);
    }
  }
};

}  // namespace

double wavevector_count_bound(std::size_t m, double cutoff) {
  return std::pow(2.0 * static_cast<double>(m) + 1.0, cutoff * cutoff);
}

WavevectorSet enumerate_wavevectors(std::size_t m, double cutoff, std::size_t cap) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "wavevector dimension must be at least 1");
  if (!(cutoff >= 0.0) || !std::isfinite(cutoff)) fail(ErrorCode::InvalidArgument, "cutoff must be finite and >= 0");
  // Integer norms only: ||k||^2 <= cutoff^2 iff ||k||^2 <= floor(cutoff^2).
  const auto limit = static_cast<std::int64_t>(std::floor(cutoff * cutoff + 1e-9));
  WavevectorSet set;
  set.m = m;
  set.cutoff = cutoff;
  Enumerator e{m, limit, cap, cutoff, std::vector<int>(m, 0), &set.vectors};
  e.visit(0, limit);
  return set;
}

}  // namespace shadowkit::kernels

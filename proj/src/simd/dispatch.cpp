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

#include <atomic>
#include <cstdlib>
#include <string>

#include "shadowkit/error.hpp"
#include "shadowkit/simd.hpp"

namespace shadowkit::simd {

namespace {

constexpr KernelTable kScalar{Backend::Scalar, &scalar::pair_histogram, &scalar::apply_2x2};
#if defined(SHADOWKIT_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2, &avx2::pair_histogram, &avx2::apply_2x2};
#endif
#if defined(SHADOWKIT_HAVE_NEON)
constexpr KernelTable kNeon{Backend::Neon, &neon::pair_histogram, &neon::apply_2x2};
#endif

bool cpu_has_avx2() {
#if defined(SHADOWKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* select_initial() {
  const Backend preferred = [] {
    if (available(Backend::Avx2)) return Backend::Avx2;
    if (available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
  }();
  if (const char* env = std::getenv("SHADOWKIT_SIMD")) {
    const std::string value(env);
    if (value == "scalar") return &table(Backend::Scalar);
    if (value == "avx2" && available(Backend::Avx2)) return &table(Backend::Avx2);
    if (value == "neon" && available(Backend::Neon)) return &table(Backend::Neon);
  }
  return &table(preferred);
}

std::atomic<const KernelTable*>& selection() {
  static std::atomic<const KernelTable*> current{select_initial()};
  return current;
}

}  // namespace

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool available(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
    case Backend::Neon:
#if defined(SHADOWKIT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (available(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& table(Backend backend) {
  if (!available(backend)) fail(ErrorCode::InvalidArgument, "SIMD backend unavailable: " + std::string(name(backend)));
  switch (backend) {
    case Backend::Scalar: return kScalar;
#if defined(SHADOWKIT_HAVE_AVX2)
    case Backend::Avx2: return kAvx2;
#endif
#if defined(SHADOWKIT_HAVE_NEON)
    case Backend::Neon: return kNeon;
#endif
    default: break;
  }
  return kScalar;
}

const KernelTable& active() { return *selection().load(); }

void force_backend(Backend backend) { selection().store(&table(backend)); }

}  // namespace shadowkit::simd

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
#include <fstream>
#include <cstring>

#include "shadowkit/error.hpp"
#include "shadowkit/kernels.hpp"

namespace shadowkit::kernels {

using nlohmann::json;

std::string kernel_name(const KernelSpec& spec) {
  switch (spec.index()) {
    case 0: return "dirichlet";
    case 1: return "pairwise_dirichlet";
    case 2: return "gaussian";
    case 3: return "shadow";
    default: return "finite_shadow";
  }
}

bool is_shadow_kernel(const KernelSpec& spec) {
  return std::holds_alternative<ShadowSpec>(spec) || std::holds_alternative<FiniteShadowSpec>(spec);
}

json to_json(const KernelSpec& spec) {
  json j = {{"kind", kernel_name(spec)}};
  if (const auto* d = std::get_if<DirichletSpec>(&spec)) j["cutoff"] = d->cutoff;
  if (const auto* p = std::get_if<PairwiseDirichletSpec>(&spec)) j["cutoff"] = p->cutoff;
  if (const auto* g = std::get_if<GaussianSpec>(&spec)) j["gamma"] = g->gamma;
  if (const auto* s = std::get_if<ShadowSpec>(&spec)) {
    j["tau"] = s->tau;
    j["gamma"] = s->gamma;
    j["exclude_equal_t_on_diagonal"] = s->exclude_equal_t_on_diagonal;
  }
  if (const auto* f = std::get_if<FiniteShadowSpec>(&spec)) {
    j["tau"] = f->tau;
    j["gamma"] = f->gamma;
    j["D"] = f->D;
    j["R"] = f->R;
  }
  return j;
}

KernelSpec kernel_spec_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "dirichlet") return DirichletSpec{j.value("cutoff", 3.0)};
    if (kind == "pairwise_dirichlet") return PairwiseDirichletSpec{j.value("cutoff", 3)};
    if (kind == "gaussian") return GaussianSpec{j.value("gamma", 0.0)};
    if (kind == "shadow") {
      return ShadowSpec{j.value("tau", 1.0), j.value("gamma", 1.0), j.value("exclude_equal_t_on_diagonal", true)};
    }
    if (kind == "finite_shadow") {
      return FiniteShadowSpec{j.value("tau", 1.0), j.value("gamma", 1.0), j.value("D", std::size_t{16}),
                              j.value("R", std::size_t{16})};
    }
    fail(ErrorCode::ConfigError, "unknown kernel kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("malformed kernel spec: ") + e.what());
  }
}

KernelSpec resolve(const KernelSpec& spec, const std::vector<Point>& points) {
  if (const auto* g = std::get_if<GaussianSpec>(&spec)) {
    if (!(g->gamma > 0.0)) return GaussianSpec{default_gamma(points)};
  }
  return spec;
}

namespace {

std::size_t common_dimension(const std::vector<Point>& points) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "Gram matrix needs at least one item");
  const std::size_t m = points.front().size();
  for (const auto& p : points) {
    if (p.size() != m) fail(ErrorCode::DimensionMismatch, "points have different dimensions");
  }
  return m;
}

json metadata_for(const KernelSpec& spec, std::size_t n, bool standardized) {
  return {{"kernel", to_json(spec)}, {"N", n}, {"standardized", standardized}};
}

double shadow_log_kernel(const shadows::ClassicalShadow& a, const shadows::ClassicalShadow& b, const KernelSpec& spec,
                         bool diagonal) {
  if (const auto* s = std::get_if<ShadowSpec>(&spec)) {
    return shadow_kernel(a, b, s->tau, s->gamma, diagonal && s->exclude_equal_t_on_diagonal).log_value;
  }
  const auto& f = std::get<FiniteShadowSpec>(spec);
  return std::log(finite_shadow_kernel(a, b, f.tau, f.gamma, f.D, f.R));
}

}  // namespace

GramMatrix gram_matrix(const std::vector<Point>& points, const KernelSpec& spec) {
  const std::size_t m = common_dimension(points);
  const KernelSpec resolved = resolve(spec, points);
  const VectorKernel kernel(resolved, m);
  const std::size_t n = points.size();
  GramMatrix gram;
  gram.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = kernel(points[i], points[j]);
      gram.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      gram.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  });
  gram.metadata = metadata_for(resolved, n, false);
  return gram;
}

GramMatrix gram_matrix(const std::vector<shadows::ClassicalShadow>& items, const KernelSpec& spec) {
  if (!is_shadow_kernel(spec)) fail(ErrorCode::InvalidArgument, "parameter kernels need points, not shadows");
  if (items.empty()) fail(ErrorCode::InvalidArgument, "Gram matrix needs at least one item");
  const std::size_t n = items.size();
  GramMatrix gram;
  gram.log_entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = shadow_log_kernel(items[i], items[j], spec, i == j);
      gram.log_entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      gram.log_entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  });
  gram.entries = gram.log_entries.array().exp().matrix();
  gram.metadata = metadata_for(spec, n, false);
  return gram;
}

GramMatrix standardize(const GramMatrix& gram) {
  const auto n = gram.entries.rows();
  GramMatrix out;
  out.entries.resize(n, n);
  const bool use_log = gram.log_entries.size() == gram.entries.size() && gram.log_entries.size() > 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = use_log ? std::exp(gram.log_entries(i, i)) : gram.entries(i, i);
    if (!(d > 0.0)) fail(ErrorCode::NonpositiveDiagonal, "diagonal entry " + std::to_string(i) + " is not positive");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        out.entries(i, j) = 1.0;
      } else if (use_log) {
        out.entries(i, j) = std::exp(gram.log_entries(i, j) - 0.5 * (gram.log_entries(i, i) + gram.log_entries(j, j)));
      } else {
        out.entries(i, j) = gram.entries(i, j) / std::sqrt(gram.entries(i, i) * gram.entries(j, j));
      }
    }
  }
  out.standardized = true;
  out.metadata = gram.metadata;
  out.metadata["standardized"] = true;
  return out;
}

RMatrix cross_gram(const std::vector<Point>& queries, const std::vector<Point>& train, const KernelSpec& spec) {
  const std::size_t m = common_dimension(train);
  const VectorKernel kernel(spec, m);
  RMatrix out(static_cast<Eigen::Index>(queries.size()), static_cast<Eigen::Index>(train.size()));
  parallel_for(queries.size(), [&](std::size_t q) {
    for (std::size_t l = 0; l < train.size(); ++l) {
      out(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(l)) = kernel(queries[q], train[l]);
    }
  });
  return out;
}

RMatrix standardized_cross_gram(const std::vector<shadows::ClassicalShadow>& queries,
                                const std::vector<shadows::ClassicalShadow>& train, const KernelSpec& spec) {
  if (!is_shadow_kernel(spec)) fail(ErrorCode::InvalidArgument, "standardized cross Gram is for shadow kernels");
  std::vector<double> train_self(train.size());
  parallel_for(train.size(), [&](std::size_t l) { train_self[l] = shadow_log_kernel(train[l], train[l], spec, true); });
  RMatrix out(static_cast<Eigen::Index>(queries.size()), static_cast<Eigen::Index>(train.size()));
  parallel_for(queries.size(), [&](std::size_t q) {
    const double self = shadow_log_kernel(queries[q], queries[q], spec, true);
    for (std::size_t l = 0; l < train.size(); ++l) {
      const double v = shadow_log_kernel(queries[q], train[l], spec, false);
      out(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(l)) = std::exp(v - 0.5 * (self + train_self[l]));
    }
  });
  return out;
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) fail(ErrorCode::TruncatedPayload, "Gram file header truncated");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return v;
}

}  // namespace

void write_gram(const std::string& path, const GramMatrix& gram) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  const auto n = gram.entries.rows();
  put_u64(out, static_cast<std::uint64_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      std::uint64_t bits;
      const double v = gram.entries(i, j);
      std::memcpy(&bits, &v, sizeof(bits));
      put_u64(out, bits);
    }
  }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

GramMatrix read_gram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  const auto n = static_cast<Eigen::Index>(get_u64(in));
  GramMatrix gram;
  gram.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::uint64_t bits = get_u64(in);
      double v;
      std::memcpy(&v, &bits, sizeof(v));
      gram.entries(i, j) = v;
    }
  }
  return gram;
}

}  // namespace shadowkit::kernels

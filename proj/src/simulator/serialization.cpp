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

#include "shadowkit/error.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::simulator {

using nlohmann::json;

json to_json(const LocalTerm& term) {
  json matrix = json::array();
  for (Eigen::Index r = 0; r < term.matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < term.matrix.cols(); ++c) {
      row.push_back({term.matrix(r, c).real(), term.matrix(r, c).imag()});
    }
    matrix.push_back(row);
  }
  return {{"sites", term.sites}, {"matrix", matrix}, {"coefficient", term.coefficient}};
}

LocalTerm term_from_json(const json& j) {
  try {
    LocalTerm term;
    term.sites = j.at("sites").get<std::vector<std::size_t>>();
    term.coefficient = j.value("coefficient", 1.0);
    const auto& rows = j.at("matrix");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    term.matrix.resize(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != dim) fail(ErrorCode::BadTerm, "term matrix is not square");
      for (Eigen::Index c = 0; c < dim; ++c) {
        const auto& entry = row.at(static_cast<std::size_t>(c));
        if (entry.is_number()) {
          term.matrix(r, c) = entry.get<double>();
        } else {
          term.matrix(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
      }
    }
    return term;
  } catch (const json::exception& e) {
    fail(ErrorCode::BadTerm, std::string("malformed term: ") + e.what());
  }
}

json to_json(const HamiltonianSpec& spec) {
  json box = json::array();
  for (const auto& axis : spec.physical_box) box.push_back({{"name", axis.name}, {"low", axis.low}, {"high", axis.high}});
  json terms = json::array();
  for (const auto& term : spec.terms) terms.push_back(to_json(term));
  return {{"n", spec.n},
          {"local_dim", spec.local_dim},
          {"family_tag", std::string(to_string(spec.family))},
          {"params", spec.params},
          {"physical_params", spec.physical_params},
          {"physical_box", box},
          {"terms", terms}};
}

HamiltonianSpec spec_from_json(const json& j) {
  try {
    HamiltonianSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    spec.local_dim = j.value("local_dim", std::size_t{2});
    spec.family = family_from_string(j.value("family_tag", std::string("Custom")));
    spec.params = j.value("params", std::vector<double>{});
    spec.physical_params = j.value("physical_params", std::vector<double>{});
    if (j.contains("physical_box")) {
      for (const auto& axis : j.at("physical_box")) {
        spec.physical_box.push_back(
            {axis.value("name", std::string()), axis.at("low").get<double>(), axis.at("high").get<double>()});
      }
    }
    for (const auto& term : j.at("terms")) {
      spec.terms.push_back(term_from_json(term));
      validate_term(spec.terms.back(), spec.n, spec.local_dim);
    }
    return spec;
  } catch (const json::exception& e) {
    fail(ErrorCode::BadTerm, std::string("malformed Hamiltonian document: ") + e.what());
  }
}

}  // namespace shadowkit::simulator

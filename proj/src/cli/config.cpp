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

#include <fstream>
#include <set>

#include "shadowkit/cli.hpp"
#include "shadowkit/error.hpp"
#include "shadowkit/predictor.hpp"

namespace shadowkit::cli {

namespace {

[[noreturn]] void config_error(const std::string& message) { fail(ErrorCode::ConfigError, message); }

Json common_defaults() { return {{"seed", 1}, {"threads", 0}, {"out", "shadowkit_out"}}; }

Json ridge_defaults() {
  return {{"mode", "dirichlet"},
          {"cutoff", 3.0},
          {"kernels", Json::array({{{"kind", "gaussian"}, {"gamma", 0.0}}, {{"kind", "dirichlet"}, {"cutoff", 3.0}}})},
          {"lambda_grid", predictor::kDefaultLambdaGrid},
          {"validation_target", "shadow"}};
}

Json pca_defaults(std::size_t split_components) {
  return {{"components", 6}, {"center", true}, {"trials", 500}, {"split_components", split_components}};
}

void require_positive(const Json& config, const std::string& dotted) {
  const Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(key)) config_error("missing key '" + dotted + "'");
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (!node->is_number() || node->get<double>() <= 0.0) config_error("'" + dotted + "' must be a positive number");
}

void validate_groups(const Json& groups) {
  if (!groups.is_array() || groups.empty()) config_error("'groups' must be a nonempty array");
  for (const auto& g : groups) {
    if (!g.contains("count") || !g["count"].is_number_integer() || g["count"].get<long long>() <= 0) {
      config_error("every group needs a positive integer 'count'");
    }
    if (g.contains("box") && !g["box"].is_object()) config_error("group 'box' must be an object");
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"generate", "predict", "classify", "pca", "invariant", "shadow-bench"};
  return names;
}

Json default_config(std::string_view command) {
  Json c = common_defaults();
  if (command == "generate") {
    c["family"] = {{"name", "TFIM"}, {"n", 6}, {"box", Json::object()}};
    c["groups"] = Json::array({{{"name", "all"}, {"count", 10}}});
    c["dataset"] = {{"T", 1}, {"write_specs", true}};
    c["observables"] = {"X", "Z"};
  } else if (command == "predict") {
    c["family"] = {{"name", "TFIM"}, {"n", 6}, {"box", Json::object()}};
    c["dataset"] = {{"N_train", 800}, {"N_validation", 0}, {"N_test", 50}, {"T", 1}};
    c["observables"] = {"X", "Z"};
    c["model"] = ridge_defaults();
  } else if (command == "classify") {
    c["family"] = {{"name", "XXZBondAlt"}, {"n", 12}, {"box", Json::object()}};
    c["groups"] = Json::array(
        {{{"name", "trivial"}, {"count", 20}, {"box", {{"jprime_over_j", {0.1, 0.5}}, {"delta", {0.5, 0.5}}}}},
         {{"name", "spt"}, {"count", 20}, {"box", {{"jprime_over_j", {2.0, 3.0}}, {"delta", {0.5, 0.5}}}}}});
    c["dataset"] = {{"T", 500}};
    c["labels"] = {{"source", "partial_reflection"}, {"interval_length", 4}};
    c["kernel"] = {{"kind", "shadow"}, {"tau", 1.0}, {"gamma", 1.0}, {"exclude_equal_t_on_diagonal", true}};
    c["svm"] = {{"lambda_sq", 100.0}, {"tol", 1e-3}, {"max_iter", 20000}, {"train_fraction", 0.5}, {"delta", 0.05}};
    c["pca"] = pca_defaults(1);
  } else if (command == "pca") {
    c["family"] = {{"name", "RydbergChain"}, {"n", 8}, {"box", Json::object()}};
    c["groups"] = Json::array({{{"name", "all"}, {"count", 60}}});
    c["dataset"] = {{"T", 500}};
    c["labels"] = {{"source", "rydberg_z2"}, {"interval_length", 4}};
    c["kernel"] = {{"kind", "shadow"}, {"tau", 1.0}, {"gamma", 1.0}, {"exclude_equal_t_on_diagonal", true}};
    c["pca"] = pca_defaults(6);
  } else if (command == "invariant") {
    c["family"] = {{"name", "XXZBondAlt"}, {"n", 12}, {"box", Json::object()}, {"periodic", true}};
    c["quantity"] = "partial_reflection";
    c["interval_length"] = 4;
    c["grid"] = {{"jprime_over_j", {0.1, 0.5, 1.0, 1.5, 2.0, 3.0}}, {"delta", {0.5, 3.0}}};
    c["ells"] = {0, 1, 2, 3};
  } else if (command == "shadow-bench") {
    c["n"] = 8;
    c["states"] = {"ghz", "random_product"};
    c["r"] = 2;
    c["eps"] = 0.25;
    c["delta"] = 0.1;
    c["seeds"] = 20;
    c["T_base"] = 0;
    c["doublings"] = 2;
  } else {
    config_error("unknown command '" + std::string(command) + "'");
  }
  return c;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    config_error("malformed JSON in '" + path + "': " + e.what());
  }
}

void apply_override(Json& config, std::string_view dotted_path, std::string_view value) {
  if (dotted_path.empty()) config_error("empty override key");
  Json parsed;
  try {
    parsed = Json::parse(value);
  } catch (const Json::parse_error&) {
    parsed = std::string(value);
  }
  Json::json_pointer pointer;
  std::size_t start = 0;
  while (start <= dotted_path.size()) {
    const std::size_t dot = dotted_path.find('.', start);
    const std::string_view key = dotted_path.substr(start, dot == std::string_view::npos ? dotted_path.npos : dot - start);
    if (key.empty()) config_error("malformed override key '" + std::string(dotted_path) + "'");
    pointer /= std::string(key);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  try {
    config[pointer] = parsed;
  } catch (const Json::exception& e) {
    config_error("cannot set '" + std::string(dotted_path) + "': " + e.what());
  }
}

Json resolve_config(std::string_view command, const Json& user) {
  if (!user.is_object()) config_error("config must be a JSON object");
  Json config = default_config(command);
  config.merge_patch(user);
  config["command"] = std::string(command);
  try {
    if (!config["seed"].is_number_integer() || config["seed"].get<long long>() < 0) {
      config_error("'seed' must be a nonnegative integer");
    }
    if (!config["threads"].is_number_integer() || config["threads"].get<long long>() < 0) {
      config_error("'threads' must be a nonnegative integer");
    }
    if (!config["out"].is_string() || config["out"].get<std::string>().empty()) config_error("'out' must be a path");

    if (command == "generate" || command == "classify" || command == "pca") {
      validate_groups(config["groups"]);
      require_positive(config, "dataset.T");
    }
    if (command == "predict") {
      require_positive(config, "dataset.N_train");
      require_positive(config, "dataset.N_test");
      require_positive(config, "dataset.T");
      const std::string mode = config["model"]["mode"];
      if (mode != "dirichlet" && mode != "ridge") config_error("model.mode must be 'dirichlet' or 'ridge'");
      if (mode == "ridge" && config["dataset"]["N_validation"].get<long long>() <= 0) {
        config_error("ridge model selection needs dataset.N_validation > 0");
      }
      if (config["model"]["lambda_grid"].empty()) config_error("model.lambda_grid is empty");
      for (const auto& k : config["model"]["kernels"]) kernels::kernel_spec_from_json(k);
    }
    if (command == "classify" || command == "pca") {
      kernels::kernel_spec_from_json(config["kernel"]);
      require_positive(config, "pca.components");
      require_positive(config, "pca.trials");
      require_positive(config, "pca.split_components");
    }
    if (command == "classify") {
      const double fraction = config["svm"]["train_fraction"];
      if (!(fraction > 0.0 && fraction < 1.0)) config_error("svm.train_fraction must lie in (0, 1)");
      require_positive(config, "svm.lambda_sq");
    }
    if (command == "shadow-bench") {
      require_positive(config, "n");
      require_positive(config, "r");
      require_positive(config, "eps");
      require_positive(config, "seeds");
      const double delta = config["delta"];
      if (!(delta > 0.0 && delta < 1.0)) config_error("'delta' must lie in (0, 1)");
      for (const auto& s : config["states"]) {
        if (s != "ghz" && s != "random_product") config_error("unknown bench state " + s.dump());
      }
    }
    if (config.contains("family")) FamilyModel probe(config["family"]);
  } catch (const Json::exception& e) {
    config_error(std::string("invalid config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(e.what());
  }
  return config;
}

// Families -----------------------------------------------------------------------------

FamilyModel::FamilyModel(const Json& family) {
  family_ = simulator::family_from_string(family.at("name").get<std::string>());
  const Json box = family.value("box", Json::object());
  std::set<std::string> used;
  auto axis_from_box = [&](simulator::ParameterAxis axis) {
    if (box.contains(axis.name)) {
      const auto range = box.at(axis.name).get<std::vector<double>>();
      if (range.size() != 2 || !(range[0] < range[1])) {
        config_error("family.box." + axis.name + " must be [low, high] with low < high");
      }
      axis.low = range[0];
      axis.high = range[1];
      used.insert(axis.name);
    }
    return axis;
  };
  switch (family_) {
    case simulator::Family::TFIM:
      tfim_.n = family.value("n", std::size_t{6});
      tfim_.field = axis_from_box(tfim_.field);
      tfim_.periodic = family.value("periodic", false);
      n_ = tfim_.n;
      axes_ = {tfim_.field};
      break;
    case simulator::Family::RydbergChain:
      rydberg_.n = family.value("n", std::size_t{8});
      rydberg_.interaction_range = family.value("interaction_range", rydberg_.interaction_range);
      rydberg_.detuning = axis_from_box(rydberg_.detuning);
      rydberg_.blockade = axis_from_box(rydberg_.blockade);
      n_ = rydberg_.n;
      axes_ = {rydberg_.detuning, rydberg_.blockade};
      break;
    case simulator::Family::Heisenberg2D:
      heisenberg_.lx = family.value("lx", std::size_t{2});
      heisenberg_.ly = family.value("ly", std::size_t{2});
      heisenberg_.coupling = axis_from_box(heisenberg_.coupling);
      n_ = heisenberg_.lx * heisenberg_.ly;
      axes_.assign(heisenberg_.num_params(), heisenberg_.coupling);
      break;
    case simulator::Family::XXZBondAlt:
      xxz_.n = family.value("n", std::size_t{8});
      xxz_.ratio = axis_from_box(xxz_.ratio);
      xxz_.anisotropy = axis_from_box(xxz_.anisotropy);
      n_ = xxz_.n;
      axes_ = {xxz_.ratio, xxz_.anisotropy};
      break;
    case simulator::Family::AKLT:
      n_ = family.value("n", std::size_t{8});
      break;
    case simulator::Family::Custom:
      config_error("custom Hamiltonians are not available from the command line");
  }
  for (const auto& [name, range] : box.items()) {
    if (!used.count(name)) config_error("family.box has no axis named '" + name + "'");
  }
  if (n_ == 0) config_error("family.n must be positive");
}

simulator::HamiltonianSpec FamilyModel::from_physical(std::span<const double> physical) const {
  switch (family_) {
    case simulator::Family::TFIM: return tfim_.from_physical(physical);
    case simulator::Family::RydbergChain: return rydberg_.from_physical(physical);
    case simulator::Family::Heisenberg2D: return heisenberg_.from_physical(physical);
    case simulator::Family::XXZBondAlt: return xxz_.from_physical(physical);
    default: break;
  }
  config_error("family " + std::string(simulator::to_string(family_)) + " has no parameter box");
}

std::vector<observables::ObservableSpec> parse_observables(const Json& names, std::size_t n) {
  if (!names.is_array()) config_error("'observables' must be an array of names");
  std::vector<observables::ObservableSpec> out;
  auto site = [&](const std::string& text, const std::string& name) {
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != text.size() || text.empty()) config_error("bad site in observable '" + name + "'");
    if (value >= n) config_error("observable '" + name + "' refers to a site outside the chain");
    return static_cast<std::size_t>(value);
  };
  for (const auto& entry : names) {
    const std::string name = entry.get<std::string>();
    if (name == "X" || name == "Y" || name == "Z") {
      for (std::size_t i = 0; i < n; ++i) out.push_back(observables::pauli(name[0], i));
    } else if (name.size() > 2 && (name[0] == 'X' || name[0] == 'Y' || name[0] == 'Z') && name[1] == '_') {
      out.push_back(observables::pauli(name[0], site(name.substr(2), name)));
    } else if (name == "C_nn") {
      for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(observables::correlator(i, i + 1));
    } else if (name == "C_all") {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(observables::correlator(i, j));
      }
    } else if (name.rfind("C_", 0) == 0) {
      const std::string rest = name.substr(2);
      const std::size_t sep = rest.find('_');
      if (sep == std::string::npos) config_error("correlator '" + name + "' needs two sites");
      out.push_back(observables::correlator(site(rest.substr(0, sep), name), site(rest.substr(sep + 1), name)));
    } else if (name == "O_Z2") {
      out.push_back(observables::order_param_z2(n));
    } else if (name == "O_Z3") {
      out.push_back(observables::order_param_z3(n));
    } else {
      config_error("unknown observable '" + name + "'");
    }
  }
  return out;
}

}  // namespace shadowkit::cli

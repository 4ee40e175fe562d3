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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowkit/kernels.hpp"
#include "shadowkit/observables.hpp"
#include "shadowkit/simulator.hpp"

namespace shadowkit::cli {

using Json = nlohmann::json;

// Configuration ---------------------------------------------------------------

/// Names accepted on the command line.
const std::vector<std::string>& command_names();

/// Every key a command reads, with its default value.
Json default_config(std::string_view command);

/// Parses a JSON file; IoError when unreadable, ConfigError when malformed.
Json load_config(const std::string& path);

/// Sets config[a][b][c] = value for the dotted path "a.b.c". The value is
/// parsed as JSON when possible and kept as a string otherwise.
void apply_override(Json& config, std::string_view dotted_path, std::string_view value);

/// Defaults merged under the user config, then validated (ConfigError).
Json resolve_config(std::string_view command, const Json& user);

// Physical families -------------------------------------------------------------

/// A named family with its physical parameter box, built from the "family"
/// config block.
class FamilyModel {
 public:
  explicit FamilyModel(const Json& family);

  simulator::Family family() const { return family_; }
  std::size_t num_qubits() const { return n_; }
  std::size_t num_params() const { return axes_.size(); }
  const std::vector<simulator::ParameterAxis>& axes() const { return axes_; }

  simulator::HamiltonianSpec from_physical(std::span<const double> physical) const;

 private:
  simulator::Family family_;
  std::size_t n_ = 0;
  std::vector<simulator::ParameterAxis> axes_;
  simulator::TfimFamily tfim_;
  simulator::RydbergChainFamily rydberg_;
  simulator::Heisenberg2DFamily heisenberg_;
  simulator::XXZBondAlternatingFamily xxz_;
};

/// Observable shorthands: "X", "Y", "Z" (every site), "X_3", "C_nn" (all
/// nearest-neighbour correlators), "C_all", "C_2_5", "O_Z2", "O_Z3".
std::vector<observables::ObservableSpec> parse_observables(const Json& names, std::size_t n);

// Dataset generation ----------------------------------------------------------------

struct DataRecord {
  std::size_t index = 0;
  std::string group;
  std::vector<double> x;         // normalized parameters
  std::vector<double> physical;  // raw parameters
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  std::string state_hash;
  simulator::HamiltonianSpec spec;
  shadows::ClassicalShadow shadow;
  std::vector<double> truths;  // exact values of the requested observables
  double reflection = 0.0;     // partial reflection invariant, when requested
};

struct DatasetOptions {
  std::size_t T = 1;
  bool keep_spec = false;
  bool reflection = false;
  std::size_t interval_length = 4;
};

/// Draws the parameter points of every group, solves each ground state,
/// samples its shadow and evaluates the exact observables. Randomness for
/// record i flows from derive_seed(root, purpose, i) only, and records are
/// processed in parallel, so the output is independent of the thread count.
std::vector<DataRecord> build_dataset(const FamilyModel& family, const Json& groups, const DatasetOptions& options,
                                      const std::vector<observables::ObservableSpec>& observables, std::uint64_t root);

// Output --------------------------------------------------------------------------

/// "%.17g", which round-trips every double.
std::string format_double(double value);

/// Buffered CSV table with a fixed header, written in one piece.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(const std::string& cell);
  CsvTable& add(double value);
  CsvTable& add_int(long long value);

  std::size_t num_rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes <dir>/<name>.json holding the command, the resolved config, and
/// a summary block.
void write_sidecar(const std::string& path, std::string_view command, const Json& config, const Json& summary);

/// Creates the directory and its parents; IoError with the path on failure.
void ensure_directory(const std::string& path);

// Commands --------------------------------------------------------------------------

/// Each command reads a resolved config, writes CSV tables and JSON sidecars
/// under config["out"], and returns the summary it wrote.
Json cmd_generate(const Json& config);
Json cmd_predict(const Json& config);
Json cmd_classify(const Json& config);
Json cmd_pca(const Json& config);
Json cmd_invariant(const Json& config);
Json cmd_shadow_bench(const Json& config);

/// Resolves `user` for `command`, applies its thread cap and dispatches.
Json run_command(std::string_view command, const Json& user);

/// Entry point of the shadowkit executable; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace shadowkit::cli

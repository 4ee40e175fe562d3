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

#include <iostream>

#include <CLI11.hpp>

#include "shadowkit/cli.hpp"
#include "shadowkit/error.hpp"

namespace shadowkit::cli {

int main_entry(int argc, char** argv) {
  CLI::App app{"shadowkit: classical shadows, kernel predictors and phase classifiers"};
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::vector<std::string> overrides;
  };
  Options opts;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opts.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "root seed (overrides config.seed)");
    sub->add_option("--threads", opts.threads, "worker cap, 0 = all cores (overrides config.threads)");
    sub->add_option("--out", opts.out, "output directory (overrides config.out)");
    sub->add_option("--set", opts.overrides, "dotted override, e.g. dataset.T=100")->take_all();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  try {
    Json user = load_config(opts.config);
    for (const auto& item : opts.overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorCode::ConfigError, "override '" + item + "' is not key=value");
      apply_override(user, item.substr(0, eq), item.substr(eq + 1));
    }
    if (sub->count("--seed")) user["seed"] = opts.seed;
    if (sub->count("--threads")) user["threads"] = opts.threads;
    if (sub->count("--out")) user["out"] = opts.out;
    const Json summary = run_command(command, user);
    std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << "shadowkit " << command << ": " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::IoError ? 2 : 1;
  }
}

}  // namespace shadowkit::cli

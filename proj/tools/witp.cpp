// Copyright 2026 The WITP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// witp: command-line driver for the teleportation sweeps.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "witp/cli.hpp"
#include "witp/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wormhole-inspired teleportation protocol simulator"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, out_dir, figure;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  app.add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--figure", figure, "Preconfigured figure sweep")
      ->check(CLI::IsMember(witp::figure_names()));
  app.set_version_flag("--version", witp::kVersion);

  for (const char* name : {"sweep-g", "sweep-t", "heatmap", "fit-betac", "compare-tfim", "sanity"})
    app.add_subcommand(name, std::string("Run ") + name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::vector<witp::RunConfig> runs;
    if (!figure.empty()) {
      runs = witp::figure_preset(figure);
    } else {
      runs.emplace_back();
    }
    const auto subs = app.get_subcommands();
    if (subs.empty() && figure.empty() && config_path.empty())
      throw witp::ValidationError("a subcommand, --figure or --config is required");
    for (auto& run : runs) {
      const witp::Command preset = run.manifest.command;
      if (!config_path.empty()) run = witp::load_config(config_path, run);
      if (!subs.empty()) run.manifest.command = witp::command_from_string(subs.front()->get_name());
      if (!figure.empty() && run.manifest.command != preset)
        throw witp::ValidationError("figure '" + figure + "' runs " + witp::to_string(preset) + ", not " +
                                    witp::to_string(run.manifest.command));
      if (!out_dir.empty()) run.manifest.out_dir = out_dir;
      if (seed) run.manifest.master_seed = *seed;
      if (workers) run.manifest.workers = *workers;
      run.validate();
    }
    int status = 0;
    for (const auto& run : runs) {
      const int s = witp::run_command(run, std::cout);
      if (s != 0) status = s;
    }
    return status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return witp::exit_code(e);
  }
}

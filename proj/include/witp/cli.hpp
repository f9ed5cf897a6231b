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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "witp/analysis.hpp"

namespace witp {

inline constexpr const char* kVersion = "witp 0.1.0";

enum class Command { SweepG, SweepT, Heatmap, FitBetaC, CompareTfim, Sanity };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct RunManifest {
  Command command = Command::SweepG;
  std::string config_path;
  std::filesystem::path out_dir = ".";
  std::uint64_t master_seed = 0;
  int workers = 1;
};

enum class GSelect { Fixed, Peak };

/// Everything a command needs: the sweep, its manifest and the command-specific
/// knobs. `spec.base.g` / `spec.base.t` / `spec.base.beta` hold the value of
/// an axis that a command does not sweep.
struct RunConfig {
  SweepSpec spec;
  RunManifest manifest;
  GSelect g_select = GSelect::Fixed;
  Axis heatmap_x = Axis::G;
  Axis heatmap_y = Axis::Beta;
  std::string label;  // output file stem

  RunConfig();
  void validate() const;
};

/// The sweep a command actually runs: axes it does not sweep collapse to the
/// base value. compare-tfim yields the SYK side; see `tfim_counterpart`.
SweepSpec effective_spec(const RunConfig& cfg);
SweepSpec tfim_counterpart(const SweepSpec& spec);

/// Parses key-value configuration text on top of `base`. Unknown keys and
/// malformed values are errors; syntax errors carry the line number.
RunConfig parse_config(const std::string& text, RunConfig base = RunConfig());
RunConfig load_config(const std::filesystem::path& path, RunConfig base = RunConfig());

/// Numeric expression or array literal as accepted by the config format.
double parse_number(const std::string& text);
std::vector<double> parse_array(const std::string& text);

std::vector<std::string> figure_names();
/// Preconfigured runs behind one figure label (one or two panels).
std::vector<RunConfig> figure_preset(const std::string& name);

// ---------------------------------------------------------------------------
// Output

/// FNV-1a of the grids and seeds, and of the whole resolved run.
std::uint64_t grid_hash(const SweepSpec& spec);
std::uint64_t config_hash(const RunConfig& cfg);

/// Comment header shared by CSV (`# `) and JSON (`meta`) outputs.
std::vector<std::pair<std::string, std::string>> output_header(const RunConfig& cfg);

void write_csv(std::ostream& out, std::span<const FidelityRecord> records, const RunConfig& cfg);
void emit_csv(const std::filesystem::path& path, std::span<const FidelityRecord> records, const RunConfig& cfg);
std::vector<FidelityRecord> read_csv(std::istream& in);
std::vector<FidelityRecord> read_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Self test

struct SanityCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SanityReport {
  std::vector<SanityCheck> checks;
  bool passed() const;
  void print(std::ostream& out) const;
};

using MajoranaFactory = std::function<ComplexMatrix(int n_modes, int k)>;

/// Stabilizer table, anticommutation, SWAP reconstruction, unitarity,
/// periodicity and TFD checks. `gamma` replaces the Majorana constructor in
/// the anticommutation check.
SanityReport sanity_suite(const MajoranaFactory& gamma = majorana);

// ---------------------------------------------------------------------------

/// Runs one command and writes its outputs under `cfg.manifest.out_dir`.
/// Returns the process exit status.
int run_command(const RunConfig& cfg, std::ostream& log);

/// 1 validation, 2 numerical, 3 I/O.
int exit_code(const std::exception& e);

}  // namespace witp

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

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "witp/cli.hpp"
#include "witp/errors.hpp"
#include "witp/random.hpp"

namespace witp {
namespace {

constexpr const char* kCsvHeader = "seed,beta,g,t,metric,variant,value,value_unit_interval";

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void put_grid(std::string& text, const char* name, const std::vector<double>& grid) {
  text += name;
  for (double v : grid) text += ' ' + fmt("%.17g", v);
  text += '\n';
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace

std::uint64_t grid_hash(const SweepSpec& spec) {
  std::string text;
  put_grid(text, "g", spec.g_grid);
  put_grid(text, "t", spec.t_grid);
  put_grid(text, "beta", spec.beta_grid);
  text += "seeds";
  for (auto s : spec.seeds) text += ' ' + std::to_string(s);
  return fnv1a64(text);
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const SweepSpec s = effective_spec(cfg);
  const ProtocolConfig& p = s.base;
  std::ostringstream os;
  os.precision(17);
  os << to_string(cfg.manifest.command) << '\n'
     << cfg.manifest.master_seed << ' ' << hex(grid_hash(s)) << ' ' << to_string(s.metric) << ' ' << s.n_s << '\n'
     << to_string(p.model.kind) << ' ' << p.model.n_majorana << ' ' << p.model.j_scale << ' ' << p.model.tfim_h_width
     << ' ' << p.model.tfim_periodic << '\n'
     << to_string(p.message.kind) << ' ' << to_string(p.swap_variant) << ' ' << p.g << ' ' << p.t << ' ' << p.beta
     << ' ' << p.conjugate_right << '\n'
     << static_cast<int>(cfg.g_select) << ' ' << to_string(cfg.heatmap_x) << ' ' << to_string(cfg.heatmap_y) << '\n';
  for (int m : p.effective_size_modes()) os << m << ' ';
  os << '\n';
  for (int r : p.effective_readout_sites()) os << r << ' ';
  return fnv1a64(os.str());
}

std::vector<std::pair<std::string, std::string>> output_header(const RunConfig& cfg) {
  const SweepSpec s = effective_spec(cfg);
  return {{"version", kVersion},
          {"command", to_string(cfg.manifest.command)},
          {"master_seed", std::to_string(cfg.manifest.master_seed)},
          {"grid_hash", hex(grid_hash(s))},
          {"config_hash", hex(config_hash(cfg))},
          {"model", to_string(s.base.model.kind)},
          {"metric", to_string(s.metric)},
          {"variant", to_string(s.base.swap_variant)}};
}

void write_csv(std::ostream& out, std::span<const FidelityRecord> records, const RunConfig& cfg) {
  for (const auto& [k, v] : output_header(cfg)) out << "# " << k << ": " << v << '\n';
  out << kCsvHeader << '\n';
  std::vector<FidelityRecord> sorted(records.begin(), records.end());
  std::stable_sort(sorted.begin(), sorted.end(), record_less);
  for (const auto& r : sorted) {
    out << r.seed << ',' << fmt("%.12g", r.beta) << ',' << fmt("%.12g", r.g) << ',' << fmt("%.12g", r.t) << ','
        << to_string(r.metric) << ',' << r.variant << ',' << fmt("%.12g", r.value) << ','
        << fmt("%.12g", r.value_unit_interval()) << '\n';
  }
}

void emit_csv(const std::filesystem::path& path, std::span<const FidelityRecord> records, const RunConfig& cfg) {
  std::ostringstream buf;
  write_csv(buf, records, cfg);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << buf.str();
  if (!out.flush()) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<FidelityRecord> read_csv(std::istream& in) {
  std::vector<FidelityRecord> out;
  std::string line;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != kCsvHeader) throw IoError("csv line " + std::to_string(line_no) + ": unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw IoError("csv line " + std::to_string(line_no) + ": expected 8 fields");
    try {
      FidelityRecord r;
      std::size_t used = 0;
      r.seed = std::stoull(f[0], &used);
      if (used != f[0].size()) throw std::invalid_argument("seed");
      const auto num = [](const std::string& s) {
        std::size_t n = 0;
        const double v = std::stod(s, &n);
        if (n != s.size()) throw std::invalid_argument(s);
        return v;
      };
      r.beta = num(f[1]);
      r.g = num(f[2]);
      r.t = num(f[3]);
      r.metric = metric_from_string(f[4]);
      r.variant = f[5];
      r.value = num(f[6]);
      out.push_back(std::move(r));
    } catch (const std::exception&) {
      throw IoError("csv line " + std::to_string(line_no) + ": malformed field");
    }
  }
  if (!header) throw IoError("csv: missing header row");
  return out;
}

std::vector<FidelityRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  return read_csv(in);
}

}  // namespace witp

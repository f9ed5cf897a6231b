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

#include <fstream>
#include <map>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "witp/cli.hpp"
#include "witp/errors.hpp"

namespace witp {
namespace {

using nlohmann::json;

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  const auto& dir = cfg.manifest.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

std::string stem(const RunConfig& cfg) { return cfg.label.empty() ? to_string(cfg.manifest.command) : cfg.label; }

void emit_json(const std::filesystem::path& path, json body, const RunConfig& cfg) {
  json meta = json::object();
  for (const auto& [k, v] : output_header(cfg)) meta[k] = v;
  body["meta"] = meta;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << body.dump(2) << '\n';
  if (!out.flush()) throw IoError("write failed for '" + path.string() + "'");
}

json stats_json(const MeanStderr& m) { return {{"mean", m.mean}, {"stderr", m.standard_error}}; }

json peaks_json(const std::vector<FidelityRecord>& records) {
  json per_seed = json::array();
  std::map<std::pair<double, double>, std::vector<double>> by_beta_t;
  for (const auto& p : peak_over_g(records)) {
    per_seed.push_back({{"seed", p.seed}, {"beta", p.beta}, {"t", p.t}, {"g_peak", p.g_peak}, {"value", p.value}});
    by_beta_t[{p.beta, p.t}].push_back(p.value);
  }
  json ensemble = json::array();
  for (const auto& [k, v] : by_beta_t) {
    json e = stats_json(mean_stderr(v));
    e["beta"] = k.first;
    e["t"] = k.second;
    e["n"] = v.size();
    ensemble.push_back(e);
  }
  return {{"per_seed", per_seed}, {"ensemble", ensemble}};
}

int check_period(const std::vector<FidelityRecord>& records, const SweepSpec& spec, json& summary, std::ostream& log) {
  const double span = spec.g_grid.back() - spec.g_grid.front();
  if (span < 4.0 * std::numbers::pi - 1e-9) return 0;
  const double dev = max_period_deviation(records);
  summary["period_deviation"] = dev;
  log << "period check: max |F(g) - F(g + 2 pi)| = " << dev << '\n';
  if (dev > 1e-8) {
    log << "error: g periodicity violated\n";
    return 2;
  }
  return 0;
}

int run_sweep_g(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const SweepSpec spec = effective_spec(cfg);
  const auto records = run_sweep(spec, cfg.manifest.workers);
  emit_csv(dir / (stem(cfg) + ".csv"), records, cfg);
  json summary = {{"peaks", peaks_json(records)}};
  const int status = check_period(records, spec, summary, log);
  emit_json(dir / (stem(cfg) + ".json"), summary, cfg);
  log << "wrote " << records.size() << " records to " << (dir / (stem(cfg) + ".csv")).string() << '\n';
  return status;
}

int run_sweep_t(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const SweepSpec spec = effective_spec(cfg);
  const auto records = cfg.g_select == GSelect::Peak ? run_recovery_sweep(spec, spec.base.t, cfg.manifest.workers)
                                                     : run_sweep(spec, cfg.manifest.workers);
  emit_csv(dir / (stem(cfg) + ".csv"), records, cfg);

  const int gap = build_size_operator(spec.base.layout(), spec.base.effective_size_modes()).spectral_gap();
  json per_seed = json::array();
  std::map<double, std::vector<double>> by_beta, product;
  for (const auto& r : recovery_times(records)) {
    per_seed.push_back({{"seed", r.seed}, {"beta", r.beta}, {"g", r.g}, {"t_recovery", r.t_recovery}});
    by_beta[r.beta].push_back(r.t_recovery);
    product[r.beta].push_back(r.g * gap * r.t_recovery);
  }
  json ensemble = json::array();
  for (const auto& [beta, v] : by_beta) {
    json e = stats_json(mean_stderr(v));
    e["beta"] = beta;
    e["n"] = v.size();
    e["g_gap_t_recovery"] = mean_stderr(product[beta]).mean;
    ensemble.push_back(e);
  }
  emit_json(dir / (stem(cfg) + ".json"),
            {{"size_spectral_gap", gap}, {"recovery", {{"per_seed", per_seed}, {"ensemble", ensemble}}}}, cfg);
  log << "wrote " << records.size() << " records; SIZE spectral gap " << gap << '\n';
  return 0;
}

int run_heatmap(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const SweepSpec spec = effective_spec(cfg);
  const auto records = run_sweep(spec, cfg.manifest.workers);
  emit_csv(dir / (stem(cfg) + ".csv"), records, cfg);
  const Heatmap h = heatmap(records, cfg.heatmap_x, cfg.heatmap_y);
  json mean = json::array(), se = json::array();
  for (std::size_t row = 0; row < h.y.size(); ++row) {
    json m = json::array(), s = json::array();
    for (std::size_t col = 0; col < h.x.size(); ++col) {
      m.push_back(h.mean[row * h.x.size() + col]);
      s.push_back(h.standard_error[row * h.x.size() + col]);
    }
    mean.push_back(m);
    se.push_back(s);
  }
  json summary = {{"x_axis", to_string(h.x_axis)}, {"y_axis", to_string(h.y_axis)}, {"x", h.x},
                  {"y", h.y},                     {"mean", mean},                   {"stderr", se}};
  const int status = cfg.heatmap_x == Axis::G || cfg.heatmap_y == Axis::G ? check_period(records, spec, summary, log) : 0;
  emit_json(dir / (stem(cfg) + ".json"), summary, cfg);
  log << "heatmap " << h.y.size() << " x " << h.x.size() << " written\n";
  return status;
}

json fit_json(const FitResult& f) {
  return {{"A", f.A}, {"B", f.B}, {"beta_c", f.beta_c}, {"residual", f.residual}};
}

int run_fit(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const SweepSpec spec = effective_spec(cfg);
  const auto records = run_sweep(spec, cfg.manifest.workers);
  emit_csv(dir / (stem(cfg) + ".csv"), records, cfg);
  const auto points = ensemble_peak_points(records);
  json pts = json::array();
  for (const auto& p : points) pts.push_back({{"beta", p.beta}, {"fidelity", p.fidelity}});

  json per_seed = json::array();
  std::map<std::uint64_t, std::vector<FitPoint>> seed_points;
  for (const auto& p : peak_over_g(records)) seed_points[p.seed].push_back({p.beta, p.value});
  for (const auto& [seed, sp] : seed_points) {
    json entry = {{"seed", seed}};
    try {
      entry["fit"] = fit_json(fit_beta_c(sp));
    } catch (const NumericalError& e) {
      entry["fit"] = nullptr;
      entry["error"] = e.what();
    }
    per_seed.push_back(entry);
  }

  json summary = {{"points", pts}, {"per_seed", per_seed}};
  int status = 0;
  try {
    const FitResult fit = fit_beta_c(points);
    summary["fit"] = fit_json(fit);
    log << "beta_c = " << fit.beta_c << "  A = " << fit.A << "  B = " << fit.B << "  rms = " << fit.residual << '\n';
  } catch (const NumericalError& e) {
    summary["fit"] = nullptr;
    summary["error"] = e.what();
    log << "error: " << e.what() << '\n';
    status = 2;
  }
  emit_json(dir / (stem(cfg) + ".json"), summary, cfg);
  return status;
}

int run_compare(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const SweepSpec syk = effective_spec(cfg);
  const SweepSpec tfim = tfim_counterpart(syk);
  const auto r_syk = run_sweep(syk, cfg.manifest.workers);
  const auto r_tfim = run_sweep(tfim, cfg.manifest.workers);
  RunConfig tfim_cfg = cfg;
  tfim_cfg.spec.base.model.kind = ModelKind::Tfim;
  emit_csv(dir / (stem(cfg) + "-syk.csv"), r_syk, cfg);
  emit_csv(dir / (stem(cfg) + "-tfim.csv"), r_tfim, tfim_cfg);
  const Comparison c = compare_peaks(r_syk, r_tfim);
  json summary = {{"syk", stats_json(c.syk)},
                  {"tfim", stats_json(c.tfim)},
                  {"difference", c.difference},
                  {"combined_stderr", c.combined_stderr},
                  {"n_syk", c.n_syk},
                  {"n_tfim", c.n_tfim}};
  emit_json(dir / (stem(cfg) + ".json"), summary, cfg);
  log << "peak SYK " << c.syk.mean << " +/- " << c.syk.standard_error << ", TFIM " << c.tfim.mean << " +/- "
      << c.tfim.standard_error << '\n';
  return 0;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.manifest.command == Command::Sanity) {
    const SanityReport report = sanity_suite();
    report.print(log);
    return report.passed() ? 0 : 2;
  }
  const auto dir = prepare_out_dir(cfg);
  switch (cfg.manifest.command) {
    case Command::SweepG: return run_sweep_g(cfg, dir, log);
    case Command::SweepT: return run_sweep_t(cfg, dir, log);
    case Command::Heatmap: return run_heatmap(cfg, dir, log);
    case Command::FitBetaC: return run_fit(cfg, dir, log);
    case Command::CompareTfim: return run_compare(cfg, dir, log);
    case Command::Sanity: break;
  }
  return 0;
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return 3;
  if (dynamic_cast<const NumericalError*>(&e)) return 2;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 1;
  return 2;
}

}  // namespace witp

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

#include "witp/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "witp/errors.hpp"
#include "witp/random.hpp"

namespace witp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_increasing(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw ValidationError(std::string(name) + ": grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ValidationError(std::string(name) + ": non-finite entry");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ValidationError(std::string(name) + ": grid must be strictly increasing");
  }
}

MessageKind message_for(Metric m) {
  switch (m) {
    case Metric::BasisZ: return MessageKind::BasisZero;
    case Metric::ArbitraryAvg: return MessageKind::Arbitrary;
    case Metric::BellStabilizer: return MessageKind::BellPhiPlus;
  }
  return MessageKind::BasisZero;
}

std::pair<double, double> metric_range(Metric m) {
  return m == Metric::ArbitraryAvg ? std::pair{0.0, 1.0} : std::pair{-1.0, 1.0};
}

std::string echo(std::uint64_t seed, double beta, double g, double t) {
  std::ostringstream os;
  os.precision(12);
  os << " [seed=" << seed << ", beta=" << beta << ", g=" << g << ", t=" << t << "]";
  return os.str();
}

struct Unit {
  std::uint64_t seed;
  double beta;
  std::vector<double> g;
  std::vector<double> t;
};

ProtocolConfig unit_config(const SweepSpec& spec, std::uint64_t seed, double beta) {
  ProtocolConfig cfg = spec.base;
  cfg.beta = beta;
  cfg.model.seed = member_seed(spec.master_seed, cfg.model.kind, seed);
  return cfg;
}

std::vector<FidelityRecord> evaluate_unit(const SweepSpec& spec, const Unit& unit) {
  const ProtocolConfig cfg = unit_config(spec, unit.seed, unit.beta);
  const ProtocolEvaluator ev(cfg, std::make_shared<const ChannelModel>(cfg.model));
  const std::string variant = to_string(cfg.swap_variant);
  const auto [lo, hi] = metric_range(spec.metric);

  std::vector<std::pair<Complex, Complex>> inputs;
  StateVector init0, init1;
  if (spec.metric == Metric::ArbitraryAvg) {
    const std::uint64_t stream = member_haar_seed(spec.master_seed, unit.seed);
    for (int i = 0; i < spec.n_s; ++i) inputs.push_back(haar_input(stream, static_cast<std::uint64_t>(i)));
    init0 = ev.initial_state(Message::basis_zero().vector(), unit.beta);
    init1 = ev.initial_state(Message::arbitrary(0.0, 1.0).vector(), unit.beta);
  } else {
    init0 = ev.initial_state(cfg.message.vector(), unit.beta);
  }

  std::vector<FidelityRecord> out;
  out.reserve(unit.g.size() * unit.t.size());
  for (double t : unit.t) {
    const StateVector s0 = ev.insert(init0, t);
    const StateVector s1 = spec.metric == Metric::ArbitraryAvg ? ev.insert(init1, t) : StateVector();
    for (double g : unit.g) {
      double value = 0.0;
      try {
        switch (spec.metric) {
          case Metric::BasisZ: value = ev.basis_z(ev.traverse(s0, g, t)); break;
          case Metric::BellStabilizer: value = ev.bell(ev.traverse(s0, g, t)); break;
          case Metric::ArbitraryAvg: {
            const ArbitraryBlocks blocks = ev.arbitrary_blocks(ev.traverse(s0, g, t), ev.traverse(s1, g, t));
            double sum = 0.0;
            for (const auto& [a, b] : inputs) sum += blocks.fidelity(a, b);
            value = sum / static_cast<double>(inputs.size());
            break;
          }
        }
      } catch (const ValidationError& e) {
        throw ValidationError(e.what() + echo(unit.seed, unit.beta, g, t));
      } catch (const std::exception& e) {
        throw NumericalError(e.what() + echo(unit.seed, unit.beta, g, t));
      }
      if (!std::isfinite(value) || value < lo - 1e-9 || value > hi + 1e-9)
        throw NumericalError("run_sweep: metric value out of range" + echo(unit.seed, unit.beta, g, t));
      out.push_back({unit.seed, unit.beta, g, t, value, spec.metric, variant});
    }
  }
  return out;
}

std::vector<FidelityRecord> run_units(const SweepSpec& spec, const std::vector<Unit>& units, int workers) {
  if (workers < 1) throw ValidationError("workers must be >= 1");
  std::vector<std::vector<FidelityRecord>> results(units.size());
  std::vector<std::exception_ptr> errors(units.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      try {
        results[i] = evaluate_unit(spec, units[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), units.size());
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<FidelityRecord> records;
  for (auto& r : results) records.insert(records.end(), r.begin(), r.end());
  std::stable_sort(records.begin(), records.end(), record_less);
  return records;
}

double axis_value(const FidelityRecord& r, Axis a) {
  switch (a) {
    case Axis::Seed: return static_cast<double>(r.seed);
    case Axis::Beta: return r.beta;
    case Axis::G: return r.g;
    case Axis::T: return r.t;
  }
  return 0.0;
}

void require_single_series(std::span<const FidelityRecord> records, const char* who) {
  if (records.empty()) throw ValidationError(std::string(who) + ": no records");
  for (const auto& r : records)
    if (r.metric != records.front().metric || r.variant != records.front().variant)
      throw ValidationError(std::string(who) + ": records mix metrics or variants");
}

}  // namespace

std::string to_string(Metric m) {
  switch (m) {
    case Metric::BasisZ: return "basis_z";
    case Metric::ArbitraryAvg: return "arbitrary_avg";
    case Metric::BellStabilizer: return "bell_stabilizer";
  }
  return "?";
}

Metric metric_from_string(const std::string& name) {
  for (Metric m : {Metric::BasisZ, Metric::ArbitraryAvg, Metric::BellStabilizer})
    if (to_string(m) == name) return m;
  throw ValidationError("metric: unknown value '" + name + "'");
}

double unit_interval(Metric m, double value) {
  return m == Metric::ArbitraryAvg ? value : 0.5 * (1.0 + value);
}

std::vector<double> default_g_grid() {
  std::vector<double> g(201);
  for (int k = 0; k <= 200; ++k) g[k] = k * std::numbers::pi / 50.0;
  return g;
}

std::vector<double> default_t_grid() {
  std::vector<double> t(81);
  for (int k = 0; k <= 80; ++k) t[k] = 0.25 * k;
  return t;
}

std::vector<double> default_beta_grid() { return {0, 1, 5, 10, 20, 50, 80, 100}; }

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> s(20);
  for (std::uint64_t i = 0; i < 20; ++i) s[i] = i;
  return s;
}

std::uint64_t member_seed(std::uint64_t master_seed, ModelKind model, std::uint64_t index) {
  return derive_seed(master_seed, model == ModelKind::Syk ? "syk-disorder" : "tfim-disorder", index);
}

std::uint64_t member_haar_seed(std::uint64_t master_seed, std::uint64_t index) {
  return derive_seed(master_seed, "haar-ensemble", index);
}

void SweepSpec::validate() const {
  require_increasing(g_grid, "g_grid");
  require_increasing(t_grid, "t_grid");
  require_increasing(beta_grid, "beta_grid");
  if (seeds.empty()) throw ValidationError("seeds: list is empty");
  for (std::size_t i = 1; i < seeds.size(); ++i)
    if (seeds[i] <= seeds[i - 1]) throw ValidationError("seeds: list must be strictly increasing");
  if (metric == Metric::ArbitraryAvg && n_s < 1) throw ValidationError("n_s must be >= 1");
  if (base.message.kind != message_for(metric))
    throw ValidationError("metric: '" + to_string(metric) + "' is incompatible with message '" +
                          to_string(base.message.kind) + "'");
  for (double beta : beta_grid) {
    for (double t : t_grid) {
      ProtocolConfig cfg = base;
      cfg.beta = beta;
      cfg.t = t;
      cfg.validate();
    }
  }
}

bool record_less(const FidelityRecord& a, const FidelityRecord& b) {
  return std::tie(a.seed, a.beta, a.g, a.t) < std::tie(b.seed, b.beta, b.g, b.t);
}

std::vector<FidelityRecord> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  std::vector<Unit> units;
  for (auto seed : spec.seeds)
    for (double beta : spec.beta_grid) units.push_back({seed, beta, spec.g_grid, spec.t_grid});
  return run_units(spec, units, workers);
}

std::vector<FidelityRecord> run_recovery_sweep(const SweepSpec& spec, double base_t, int workers) {
  SweepSpec first = spec;
  first.t_grid = {base_t};
  first.validate();
  spec.validate();
  const auto peaks = peak_over_g(run_units(first, [&] {
    std::vector<Unit> u;
    for (auto seed : first.seeds)
      for (double beta : first.beta_grid) u.push_back({seed, beta, first.g_grid, first.t_grid});
    return u;
  }(), workers));

  std::vector<Unit> units;
  for (const auto& p : peaks) units.push_back({p.seed, p.beta, {p.g_peak}, spec.t_grid});
  return run_units(spec, units, workers);
}

// ---------------------------------------------------------------------------

std::string to_string(Axis a) {
  switch (a) {
    case Axis::Seed: return "seed";
    case Axis::Beta: return "beta";
    case Axis::G: return "g";
    case Axis::T: return "t";
  }
  return "?";
}

Axis axis_from_string(const std::string& name) {
  for (Axis a : {Axis::Seed, Axis::Beta, Axis::G, Axis::T})
    if (to_string(a) == name) return a;
  throw ValidationError("axis: unknown value '" + name + "'");
}

MeanStderr mean_stderr(std::span<const double> values) {
  if (values.empty()) throw ValidationError("ensemble_mean: empty group");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  MeanStderr out;
  out.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

std::vector<GroupStats> ensemble_mean(std::span<const FidelityRecord> records, std::span<const Axis> group_by) {
  if (records.empty()) throw ValidationError("ensemble_mean: empty group");
  const auto has = [&](Axis a) { return std::find(group_by.begin(), group_by.end(), a) != group_by.end(); };
  using Key = std::tuple<int, std::string, std::optional<std::uint64_t>, std::optional<double>,
                         std::optional<double>, std::optional<double>>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : records) {
    Key k{static_cast<int>(r.metric), r.variant,
          has(Axis::Seed) ? std::optional(r.seed) : std::nullopt,
          has(Axis::Beta) ? std::optional(r.beta) : std::nullopt,
          has(Axis::G) ? std::optional(r.g) : std::nullopt,
          has(Axis::T) ? std::optional(r.t) : std::nullopt};
    groups[k].push_back(r.value);
  }
  std::vector<GroupStats> out;
  for (const auto& [k, values] : groups) {
    GroupStats s;
    s.metric = static_cast<Metric>(std::get<0>(k));
    s.variant = std::get<1>(k);
    s.seed = std::get<2>(k);
    s.beta = std::get<3>(k);
    s.g = std::get<4>(k);
    s.t = std::get<5>(k);
    const MeanStderr m = mean_stderr(values);
    s.mean = m.mean;
    s.standard_error = m.standard_error;
    s.n = values.size();
    out.push_back(std::move(s));
  }
  return out;
}

double recovery_time(std::span<const double> t, std::span<const double> values) {
  if (t.empty() || t.size() != values.size()) throw ValidationError("recovery_time: empty or mismatched curve");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double tol = 1e-12 * (*hi - *lo);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (values[i] >= *hi - tol) best = std::min(best, t[i]);
  return best;
}

double recovery_time(std::span<const FidelityRecord> records) {
  require_single_series(records, "recovery_time");
  const auto& f = records.front();
  std::vector<double> t, v;
  for (const auto& r : records) {
    if (r.seed != f.seed || r.beta != f.beta || r.g != f.g)
      throw ValidationError("recovery_time: records differ in an axis other than t");
    t.push_back(r.t);
    v.push_back(r.value);
  }
  return recovery_time(t, v);
}

std::vector<RecoveryPoint> recovery_times(std::span<const FidelityRecord> records) {
  require_single_series(records, "recovery_times");
  std::map<std::tuple<std::uint64_t, double, double>, std::pair<std::vector<double>, std::vector<double>>> curves;
  for (const auto& r : records) {
    auto& c = curves[{r.seed, r.beta, r.g}];
    c.first.push_back(r.t);
    c.second.push_back(r.value);
  }
  std::vector<RecoveryPoint> out;
  for (const auto& [k, c] : curves)
    out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), recovery_time(c.first, c.second)});
  return out;
}

std::vector<PeakPoint> peak_over_g(std::span<const FidelityRecord> records) {
  require_single_series(records, "peak_over_g");
  std::map<std::tuple<std::uint64_t, double, double>, std::pair<double, double>> best;  // (g, value)
  std::vector<FidelityRecord> sorted(records.begin(), records.end());
  std::stable_sort(sorted.begin(), sorted.end(), record_less);
  for (const auto& r : sorted) {
    const auto key = std::make_tuple(r.seed, r.beta, r.t);
    auto it = best.find(key);
    if (it == best.end())
      best.emplace(key, std::pair{r.g, r.value});
    else if (r.value > it->second.second)
      it->second = {r.g, r.value};
  }
  std::vector<PeakPoint> out;
  for (const auto& [k, v] : best) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v.first, v.second});
  return out;
}

double max_period_deviation(std::span<const FidelityRecord> records) {
  using Key = std::tuple<std::uint64_t, double, double, int, std::string>;
  std::map<Key, std::vector<std::pair<double, double>>> curves;
  for (const auto& r : records) curves[{r.seed, r.beta, r.t, static_cast<int>(r.metric), r.variant}].push_back({r.g, r.value});
  double worst = 0.0;
  for (auto& [k, c] : curves) {
    std::sort(c.begin(), c.end());
    for (const auto& [g, v] : c) {
      auto it = std::lower_bound(c.begin(), c.end(), std::pair{g + kTwoPi - 1e-9, -std::numeric_limits<double>::infinity()});
      if (it != c.end() && std::abs(it->first - (g + kTwoPi)) <= 1e-9) worst = std::max(worst, std::abs(it->second - v));
    }
  }
  return worst;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("pearson: need two equal-length series");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------

namespace {

struct LinearFit {
  double a, b, sse;
};

LinearFit solve_amplitudes(std::span<const FitPoint> pts, double beta_c) {
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, mf = 0.0;
  std::vector<double> x(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x[i] = std::exp(-pts[i].beta / beta_c);
    mx += x[i];
    mf += pts[i].fidelity;
  }
  mx /= n;
  mf /= n;
  double sxx = 0.0, sxf = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxf += (x[i] - mx) * (pts[i].fidelity - mf);
  }
  LinearFit fit{mf, 0.0, 0.0};
  if (sxx > 0.0) {
    fit.b = sxf / sxx;
    fit.a = mf - fit.b * mx;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = pts[i].fidelity - fit.a - fit.b * x[i];
    fit.sse += r * r;
  }
  return fit;
}

}  // namespace

FitResult fit_beta_c(std::span<const FitPoint> points) {
  if (points.size() < 3) throw ValidationError("fit_beta_c: need at least 3 points");
  std::set<double> distinct;
  double mean = 0.0;
  for (const auto& p : points) {
    if (!std::isfinite(p.beta) || !std::isfinite(p.fidelity) || p.beta < 0.0)
      throw ValidationError("fit_beta_c: points must be finite with beta >= 0");
    distinct.insert(p.beta);
    mean += p.fidelity;
  }
  if (distinct.size() < 3) throw ValidationError("fit_beta_c: need at least 3 distinct beta values");
  mean /= static_cast<double>(points.size());
  double spread = 0.0;
  for (const auto& p : points) spread = std::max(spread, std::abs(p.fidelity - mean));
  if (spread <= 1e-12 * std::max(1.0, std::abs(mean)))
    throw NumericalError("fit_beta_c: constant data, beta_c is not identifiable");

  const double u_lo = std::log(0.1), u_hi = std::log(1000.0);
  const auto objective = [&](double u) { return solve_amplitudes(points, std::exp(u)).sse; };

  // Coarse scan to bracket the global minimum, then golden-section refinement.
  constexpr int kScan = 240;
  int k_best = 0;
  double f_best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kScan; ++k) {
    const double f = objective(u_lo + (u_hi - u_lo) * k / kScan);
    if (f < f_best) {
      f_best = f;
      k_best = k;
    }
  }
  double a = u_lo + (u_hi - u_lo) * std::max(0, k_best - 1) / kScan;
  double b = u_lo + (u_hi - u_lo) * std::min(kScan, k_best + 1) / kScan;

  FitResult result;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  double u_best = u_lo + (u_hi - u_lo) * k_best / kScan;
  const auto track = [&](double u, double f) {
    if (f < f_best) {
      f_best = f;
      u_best = u;
    }
  };
  track(c, fc);
  track(d, fd);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
      track(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
      track(d, fd);
    }
    result.trace.push_back(f_best);
  }

  result.beta_c = std::exp(u_best);
  const LinearFit fit = solve_amplitudes(points, result.beta_c);
  result.A = fit.a;
  result.B = fit.b;
  result.residual = std::sqrt(fit.sse / static_cast<double>(points.size()));
  if (!std::isfinite(result.residual)) throw NumericalError("fit_beta_c: non-finite residual");
  return result;
}

std::vector<FitPoint> ensemble_peak_points(std::span<const FidelityRecord> records) {
  const auto peaks = peak_over_g(records);
  std::map<double, std::vector<double>> by_beta;
  for (const auto& p : peaks) {
    if (p.t != peaks.front().t) throw ValidationError("ensemble_peak_points: records span several t values");
    by_beta[p.beta].push_back(p.value);
  }
  std::vector<FitPoint> out;
  for (const auto& [beta, v] : by_beta) out.push_back({beta, mean_stderr(v).mean});
  return out;
}

Comparison compare_peaks(std::span<const FidelityRecord> first, std::span<const FidelityRecord> second) {
  const auto per_seed = [](std::span<const FidelityRecord> recs, std::set<double>& grid) {
    require_single_series(recs, "compare_models");
    std::map<std::uint64_t, double> peak;
    for (const auto& r : recs) {
      if (r.beta != 0.0) throw ValidationError("compare_models: records must be at beta = 0");
      grid.insert(r.g);
      auto [it, fresh] = peak.emplace(r.seed, r.value);
      if (!fresh) it->second = std::max(it->second, r.value);
    }
    std::vector<double> v;
    for (const auto& [s, p] : peak) v.push_back(p);
    return v;
  };
  std::set<double> g1, g2;
  const auto p1 = per_seed(first, g1);
  const auto p2 = per_seed(second, g2);
  if (g1 != g2) throw ValidationError("compare_models: g grids differ");
  Comparison c;
  c.syk = mean_stderr(p1);
  c.tfim = mean_stderr(p2);
  c.n_syk = p1.size();
  c.n_tfim = p2.size();
  c.difference = c.syk.mean - c.tfim.mean;
  c.combined_stderr = std::hypot(c.syk.standard_error, c.tfim.standard_error);
  return c;
}

Comparison compare_models(const SweepSpec& first, const SweepSpec& second, int workers) {
  if (first.g_grid != second.g_grid) throw ValidationError("compare_models: g grids differ");
  if (first.beta_grid != std::vector<double>{0.0} || second.beta_grid != std::vector<double>{0.0})
    throw ValidationError("compare_models: beta_grid must be [0]");
  const auto r1 = run_sweep(first, workers);
  const auto r2 = run_sweep(second, workers);
  return compare_peaks(r1, r2);
}

Heatmap heatmap(std::span<const FidelityRecord> records, Axis x_axis, Axis y_axis) {
  if (x_axis == y_axis || x_axis == Axis::Seed || y_axis == Axis::Seed)
    throw ValidationError("heatmap: axes must be two distinct non-seed axes");
  require_single_series(records, "heatmap");
  std::set<double> xs, ys;
  std::set<std::uint64_t> seeds;
  for (const auto& r : records) {
    xs.insert(axis_value(r, x_axis));
    ys.insert(axis_value(r, y_axis));
    seeds.insert(r.seed);
    for (Axis a : {Axis::Beta, Axis::G, Axis::T}) {
      if (a != x_axis && a != y_axis && axis_value(r, a) != axis_value(records.front(), a))
        throw ValidationError("heatmap: axis '" + to_string(a) + "' varies but is not plotted");
    }
  }
  Heatmap h;
  h.x_axis = x_axis;
  h.y_axis = y_axis;
  h.x.assign(xs.begin(), xs.end());
  h.y.assign(ys.begin(), ys.end());
  std::vector<std::map<std::uint64_t, double>> cells(h.x.size() * h.y.size());
  for (const auto& r : records) {
    const auto col = std::lower_bound(h.x.begin(), h.x.end(), axis_value(r, x_axis)) - h.x.begin();
    const auto row = std::lower_bound(h.y.begin(), h.y.end(), axis_value(r, y_axis)) - h.y.begin();
    if (!cells[row * h.x.size() + col].emplace(r.seed, r.value).second)
      throw ValidationError("heatmap: duplicate record for one cell and seed");
  }
  for (std::size_t row = 0; row < h.y.size(); ++row) {
    for (std::size_t col = 0; col < h.x.size(); ++col) {
      const auto& cell = cells[row * h.x.size() + col];
      if (cell.size() != seeds.size()) {
        std::ostringstream os;
        os.precision(12);
        os << "heatmap: missing cell " << to_string(x_axis) << "=" << h.x[col] << ", " << to_string(y_axis) << "="
           << h.y[row];
        throw ValidationError(os.str());
      }
      std::vector<double> v;
      for (const auto& [s, value] : cell) v.push_back(value);
      const MeanStderr m = mean_stderr(v);
      h.mean.push_back(m.mean);
      h.standard_error.push_back(m.standard_error);
    }
  }
  return h;
}

}  // namespace witp

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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "witp/protocol.hpp"

namespace witp {

enum class Metric { BasisZ, ArbitraryAvg, BellStabilizer };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& name);

/// Raw metric value mapped to [0, 1]: (1 + v) / 2 for the two signed metrics.
double unit_interval(Metric m, double value);

std::vector<double> default_g_grid();     // 0, pi/50, ..., 4 pi
std::vector<double> default_t_grid();     // 0, 0.25, ..., 20
std::vector<double> default_beta_grid();  // 0 1 5 10 20 50 80 100
std::vector<std::uint64_t> default_seeds();  // 0 .. 19

struct SweepSpec {
  ProtocolConfig base;
  std::vector<double> g_grid = default_g_grid();
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> beta_grid = default_beta_grid();
  std::vector<std::uint64_t> seeds = default_seeds();
  Metric metric = Metric::BasisZ;
  int n_s = 100;
  std::uint64_t master_seed = 0;

  /// Checks the grids and every (beta, t) configuration they generate.
  void validate() const;
};

/// Disorder seed of ensemble member `index`.
std::uint64_t member_seed(std::uint64_t master_seed, ModelKind model, std::uint64_t index);
/// Haar input stream of ensemble member `index`.
std::uint64_t member_haar_seed(std::uint64_t master_seed, std::uint64_t index);

struct FidelityRecord {
  std::uint64_t seed = 0;  // ensemble index
  double beta = 0.0;
  double g = 0.0;
  double t = 0.0;
  double value = 0.0;
  Metric metric = Metric::BasisZ;
  std::string variant;

  double value_unit_interval() const { return unit_interval(metric, value); }
};

/// Canonical (seed, beta, g, t) order.
bool record_less(const FidelityRecord& a, const FidelityRecord& b);

/// One record per (seed, beta, g, t). Work is split by (seed, beta) across
/// `workers` threads; the output order does not depend on `workers`.
std::vector<FidelityRecord> run_sweep(const SweepSpec& spec, int workers = 1);

/// Per (seed, beta): picks g maximizing the metric at `base_t` over g_grid
/// (first maximum wins), then sweeps t_grid at that g.
std::vector<FidelityRecord> run_recovery_sweep(const SweepSpec& spec, double base_t, int workers = 1);

// ---------------------------------------------------------------------------
// Statistics

enum class Axis { Seed, Beta, G, T };

std::string to_string(Axis a);
Axis axis_from_string(const std::string& name);

struct GroupStats {
  /// Grouping coordinates; axes not grouped on are empty.
  std::optional<std::uint64_t> seed;
  std::optional<double> beta, g, t;
  Metric metric = Metric::BasisZ;
  std::string variant;
  double mean = 0.0;
  double standard_error = 0.0;  // sample std / sqrt(n); 0 for n = 1
  std::size_t n = 0;
};

/// Groups by the listed axes plus (metric, variant), which are never mixed.
std::vector<GroupStats> ensemble_mean(std::span<const FidelityRecord> records, std::span<const Axis> group_by);

MeanStderr mean_stderr(std::span<const double> values);

/// argmax_t of the curve; values within 1e-12 of the curve's range count as
/// ties and resolve to the smallest t. A flat curve returns the smallest t.
double recovery_time(std::span<const double> t, std::span<const double> values);
/// Records must share every axis except t.
double recovery_time(std::span<const FidelityRecord> records);

/// Per (seed, beta, g) recovery times, sorted by that key.
struct RecoveryPoint {
  std::uint64_t seed;
  double beta;
  double g;
  double t_recovery;
};
std::vector<RecoveryPoint> recovery_times(std::span<const FidelityRecord> records);

/// Maximum over g of the metric per (seed, beta, t), sorted by that key.
struct PeakPoint {
  std::uint64_t seed;
  double beta;
  double t;
  double g_peak;
  double value;
};
std::vector<PeakPoint> peak_over_g(std::span<const FidelityRecord> records);

/// max |F(g) - F(g + 2 pi)| over every curve in `records`; 0 when no g pairs
/// one period apart exist.
double max_period_deviation(std::span<const FidelityRecord> records);

/// Pearson correlation; NaN when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Fits and comparisons

struct FitResult {
  double A = 0.0;
  double B = 0.0;
  double beta_c = 0.0;
  double residual = 0.0;  // RMS
  /// Best objective after each golden-section step.
  std::vector<double> trace;
};

struct FitPoint {
  double beta;
  double fidelity;
};

/// Least squares for F = A + B exp(-beta / beta_c), beta_c in [0.1, 1000].
/// Throws NumericalError for constant data (beta_c not identifiable).
FitResult fit_beta_c(std::span<const FitPoint> points);

/// Ensemble-mean (beta, value) points from per-(seed, beta) peaks.
std::vector<FitPoint> ensemble_peak_points(std::span<const FidelityRecord> records);

struct Comparison {
  MeanStderr syk;
  MeanStderr tfim;
  double difference = 0.0;  // syk - tfim
  double combined_stderr = 0.0;
  std::size_t n_syk = 0;
  std::size_t n_tfim = 0;
};

/// Peak-over-g ensemble means of two beta = 0 sweeps with the same g grid.
Comparison compare_models(const SweepSpec& first, const SweepSpec& second, int workers = 1);
Comparison compare_peaks(std::span<const FidelityRecord> first, std::span<const FidelityRecord> second);

struct Heatmap {
  Axis x_axis = Axis::G;
  Axis y_axis = Axis::Beta;
  std::vector<double> x;
  std::vector<double> y;
  /// Row-major, rows indexed by y.
  std::vector<double> mean;
  std::vector<double> standard_error;

  double at(std::size_t row, std::size_t col) const { return mean[row * x.size() + col]; }
};

/// Ensemble means over seeds on the full x-by-y grid. Missing cells and
/// extra varying axes are errors.
Heatmap heatmap(std::span<const FidelityRecord> records, Axis x_axis, Axis y_axis);

}  // namespace witp

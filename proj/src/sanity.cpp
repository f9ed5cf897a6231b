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

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "witp/cli.hpp"

namespace witp {
namespace {

SanityCheck make_check(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation, tolerance, std::isfinite(deviation) && deviation <= tolerance};
}

double anticommutation_deviation(const MajoranaFactory& gamma, int max_majoranas) {
  double worst = 0.0;
  for (int modes = 1; 2 * modes <= max_majoranas; ++modes) {
    const Eigen::Index dim = qubit_dim(modes);
    std::vector<ComplexMatrix> g;
    for (int k = 0; k < 2 * modes; ++k) g.push_back(gamma(modes, k));
    for (int a = 0; a < 2 * modes; ++a) {
      for (int b = 0; b < 2 * modes; ++b) {
        ComplexMatrix ac = g[a] * g[b] + g[b] * g[a];
        if (a == b) ac -= 2.0 * ComplexMatrix::Identity(dim, dim);
        worst = std::max(worst, max_abs(ac));
      }
    }
  }
  return worst;
}

double bell_table_deviation() {
  const double r = 1.0 / std::numbers::sqrt2;
  const auto dm = [](const StateVector& v) { return ComplexMatrix(v * v.adjoint()); };
  StateVector phi_p(4), phi_m(4), psi_p(4), psi_m(4);
  phi_p << r, 0, 0, r;
  phi_m << r, 0, 0, -r;
  psi_p << 0, r, r, 0;
  psi_m << 0, r, -r, 0;
  double worst = 0.0;
  worst = std::max(worst, std::abs(stabilizer_fidelity(dm(phi_p)) - 1.0));
  worst = std::max(worst, std::abs(stabilizer_fidelity(dm(phi_m)) - 1.0));
  worst = std::max(worst, std::abs(stabilizer_fidelity(dm(psi_p)) - 1.0));
  worst = std::max(worst, std::abs(stabilizer_fidelity(dm(psi_m)) + 1.0));
  worst = std::max(worst, std::abs(stabilizer_fidelity(ComplexMatrix::Identity(4, 4) / 4.0) - 0.5));
  return worst;
}

double swap_reconstruction_deviation() {
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        worst = std::max(worst, max_abs(pauli_sum(swap_pauli_decomposition(n, a, b)) - swap_matrix(n, a, b)));
  return worst;
}

double unitarity_deviation() {
  double worst = 0.0;
  for (SwapVariant v : {SwapVariant::D01, SwapVariant::D02, SwapVariant::BellSequential}) {
    ProtocolConfig cfg;
    cfg.swap_variant = v;
    cfg.message = v == SwapVariant::BellSequential ? Message::bell_phi_plus() : Message::basis_zero();
    const RegisterLayout layout = cfg.layout();
    const SykCouplings c = sample_syk_couplings(6, 4, 1.0, 0);
    const ComplexMatrix hl = build_syk_hamiltonian(c, Side::Left, layout);
    const ComplexMatrix hr = build_syk_hamiltonian(c, Side::Right, layout);
    const SizeOperator size = build_size_operator(layout, cfg.effective_size_modes());
    const ComplexMatrix u = wormhole_unitary(hl, hr, build_insert(cfg), size, 1.3, 2.5);
    worst = std::max(worst, unitarity_error(u));
  }
  return worst;
}

double periodicity_deviation() {
  double worst = 0.0;
  for (Metric m : {Metric::BasisZ, Metric::ArbitraryAvg, Metric::BellStabilizer}) {
    for (SwapVariant v : {SwapVariant::D01, SwapVariant::D02}) {
      SweepSpec spec;
      spec.metric = m;
      spec.base.swap_variant = m == Metric::BellStabilizer ? SwapVariant::BellSequential : v;
      spec.base.message = m == Metric::BasisZ          ? Message::basis_zero()
                          : m == Metric::ArbitraryAvg ? Message::arbitrary(1.0, 0.0)
                                                      : Message::bell_phi_plus();
      spec.g_grid.clear();
      for (int k = 0; k <= 20; ++k) spec.g_grid.push_back(k * std::numbers::pi / 5.0);
      spec.t_grid = {2.5};
      spec.beta_grid = {0.0, 5.0};
      spec.seeds = {0};
      spec.n_s = 16;
      worst = std::max(worst, max_period_deviation(run_sweep(spec)));
      if (m == Metric::BellStabilizer) break;
    }
  }
  return worst;
}

double tfd_bell_deviation() {
  const EigenSystem es = hermitian_eig(syk_side_hamiltonian(sample_syk_couplings(6, 4, 1.0, 0)));
  const TfdState tfd = build_tfd(es, 0.0);
  return 1.0 - std::norm(bell_pair_product(3).dot(tfd.state));
}

double gibbs_marginal_deviation() {
  const EigenSystem es = hermitian_eig(syk_side_hamiltonian(sample_syk_couplings(6, 4, 1.0, 0)));
  const std::vector<int> left = {0, 1, 2};
  double worst = 0.0;
  for (double beta : {0.0, 1.0, 5.0, 20.0, 100.0}) {
    const TfdState tfd = build_tfd(es, beta);
    worst = std::max(worst, max_abs(reduced_density(tfd.state, 6, left) - gibbs_state(es, beta)));
  }
  return worst;
}

}  // namespace

bool SanityReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

void SanityReport::print(std::ostream& out) const {
  for (const auto& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%s  %-28s deviation=%.3e  tolerance=%.1e\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.deviation, c.tolerance);
    out << line;
  }
}

SanityReport sanity_suite(const MajoranaFactory& gamma) {
  SanityReport r;
  r.checks.push_back(make_check("stabilizer-table", bell_table_deviation(), 1e-12));
  r.checks.push_back(make_check("majorana-anticommutation", anticommutation_deviation(gamma, 8), 1e-12));
  r.checks.push_back(make_check("swap-pauli-reconstruction", swap_reconstruction_deviation(), 1e-12));
  r.checks.push_back(make_check("wormhole-unitarity", unitarity_deviation(), 1e-10));
  r.checks.push_back(make_check("g-periodicity", periodicity_deviation(), 1e-8));
  r.checks.push_back(make_check("tfd-bell-pairs", tfd_bell_deviation(), 1e-10));
  r.checks.push_back(make_check("tfd-gibbs-marginal", gibbs_marginal_deviation(), 1e-9));
  return r;
}

}  // namespace witp

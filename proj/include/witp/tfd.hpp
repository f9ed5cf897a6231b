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

#include <iosfwd>

#include "witp/linalg.hpp"

namespace witp {

/// Thermofield double on [left | right], left index major:
///   |TFD> = Z^{-1/2} sum_n exp(-beta E_n / 2) |E_n>_L (x) |E_n>_R
/// with |E_n>_R conjugated when `conjugate_right` is set.
struct TfdState {
  double beta = 0.0;
  int n_side = 0;
  bool conjugate_right = true;
  StateVector state;
  RealVector spectrum;
  double partition_function = 0.0;      // may be +inf for extreme beta * |E_min|
  double log_partition_function = 0.0;  // always finite
  RealVector weights;                   // exp(-beta E_n) / Z
};

/// log Z = -beta E_min + log sum_n exp(-beta (E_n - E_min)).
double log_partition_function(const RealVector& spectrum, double beta);
double partition_function(const RealVector& spectrum, double beta);

/// Normalised Boltzmann weights computed in shifted log space.
RealVector boltzmann_weights(const RealVector& spectrum, double beta);

TfdState build_tfd(const EigenSystem& side, double beta, bool conjugate_right = true);
TfdState build_tfd(const ComplexMatrix& h_side, double beta, bool conjugate_right = true);

/// exp(-beta H) / Z from an eigensystem.
ComplexMatrix gibbs_state(const EigenSystem& side, double beta);

/// |Phi+>^{(x) n_side} with left qubit k paired to right qubit k, laid out as
/// [left | right].
StateVector bell_pair_product(int n_side);

/// Von Neumann entropy of the left marginal (natural log).
double entanglement_entropy(const TfdState& tfd);

/// Debug dump: one "index real imag" row per amplitude.
void write_amplitudes(std::ostream& out, const StateVector& state);

}  // namespace witp

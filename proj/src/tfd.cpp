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

#include "witp/tfd.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace witp {
namespace {

void check_inputs(const RealVector& spectrum, double beta) {
  if (spectrum.size() == 0) throw ValidationError("partition function of an empty spectrum");
  if (!std::isfinite(beta) || beta < 0.0) throw ValidationError("beta must be finite and >= 0");
  if (!spectrum.allFinite()) throw ValidationError("spectrum must be finite");
}

}  // namespace

double log_partition_function(const RealVector& spectrum, double beta) {
  check_inputs(spectrum, beta);
  const double e_min = spectrum.minCoeff();
  const double shifted = (-beta * (spectrum.array() - e_min)).exp().sum();
  return -beta * e_min + std::log(shifted);
}

double partition_function(const RealVector& spectrum, double beta) {
  check_inputs(spectrum, beta);
  const double e_min = spectrum.minCoeff();
  const double shifted = (-beta * (spectrum.array() - e_min)).exp().sum();
  return std::exp(-beta * e_min) * shifted;
}

RealVector boltzmann_weights(const RealVector& spectrum, double beta) {
  check_inputs(spectrum, beta);
  const double e_min = spectrum.minCoeff();
  RealVector w = (-beta * (spectrum.array() - e_min)).exp();
  return w / w.sum();
}

TfdState build_tfd(const EigenSystem& side, double beta, bool conjugate_right) {
  const Eigen::Index dim = side.dim();
  int n_side = 0;
  while (qubit_dim(n_side) < dim) ++n_side;
  if (qubit_dim(n_side) != dim) throw ValidationError("build_tfd: side dimension is not a power of two");

  TfdState tfd;
  tfd.beta = beta;
  tfd.n_side = n_side;
  tfd.conjugate_right = conjugate_right;
  tfd.spectrum = side.eigenvalues;
  tfd.log_partition_function = log_partition_function(side.eigenvalues, beta);
  tfd.partition_function = std::exp(tfd.log_partition_function);
  tfd.weights = boltzmann_weights(side.eigenvalues, beta);

  // sum_n sqrt(p_n) v_n (x) w_n  ==  vec of  V diag(sqrt p) W^T  (left index major)
  const ComplexMatrix& v = side.eigenvectors;
  const ComplexMatrix w = conjugate_right ? ComplexMatrix(v.conjugate()) : v;
  const Eigen::VectorXcd amp = tfd.weights.cwiseSqrt().cast<Complex>();
  const ComplexMatrix coeff = v * amp.asDiagonal() * w.transpose();  // coeff(l, r)
  tfd.state.resize(dim * dim);
  for (Eigen::Index l = 0; l < dim; ++l)
    for (Eigen::Index r = 0; r < dim; ++r) tfd.state(l * dim + r) = coeff(l, r);
  return tfd;
}

TfdState build_tfd(const ComplexMatrix& h_side, double beta, bool conjugate_right) {
  return build_tfd(hermitian_eig(h_side), beta, conjugate_right);
}

ComplexMatrix gibbs_state(const EigenSystem& side, double beta) {
  const RealVector p = boltzmann_weights(side.eigenvalues, beta);
  return side.eigenvectors * p.cast<Complex>().asDiagonal() * side.eigenvectors.adjoint();
}

StateVector bell_pair_product(int n_side) {
  const Eigen::Index dim = qubit_dim(n_side);
  StateVector psi = StateVector::Zero(dim * dim);
  // Pairing qubit k with qubit n_side + k: amplitude is nonzero iff the left
  // and right bit strings agree.
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index x = 0; x < dim; ++x) psi(x * dim + x) = amp;
  return psi;
}

double entanglement_entropy(const TfdState& tfd) {
  double s = 0.0;
  for (double p : tfd.weights)
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

void write_amplitudes(std::ostream& out, const StateVector& state) {
  out << "# index real imag\n";
  for (Eigen::Index i = 0; i < state.size(); ++i)
    out << i << ' ' << std::setprecision(17) << state(i).real() << ' ' << state(i).imag() << '\n';
}

}  // namespace witp

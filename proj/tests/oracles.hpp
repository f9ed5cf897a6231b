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

// Independent reference implementations used only by tests. Nothing here
// calls into the library's numerical routines.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

namespace witp::oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char p) {
  Mat m(2, 2);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Mat brute_kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat pauli_string(const std::string& letters) {
  Mat m = Mat::Identity(1, 1);
  for (char c : letters) m = brute_kron(m, pauli(c));
  return m;
}

inline int bit(long s, int n, int site) { return static_cast<int>((s >> (n - 1 - site)) & 1); }

/// c_i built from its action on basis states: clears bit i-1 if set, with sign
/// (-1)^(occupied sites after i-1).
inline Mat jw_annihilation(int n, int i) {
  const long dim = 1L << n;
  Mat m = Mat::Zero(dim, dim);
  const int site = i - 1;
  for (long s = 0; s < dim; ++s) {
    if (!bit(s, n, site)) continue;
    int later = 0;
    for (int q = site + 1; q < n; ++q) later += bit(s, n, q);
    const long t = s & ~(1L << (n - 1 - site));
    m(t, s) = (later % 2) ? -1.0 : 1.0;
  }
  return m;
}

inline Mat majorana(int n, int k) {
  const Mat c = jw_annihilation(n, k / 2 + 1);
  return k % 2 == 0 ? Mat(c + c.adjoint()) : Mat(C(0, 1) * (c - c.adjoint()));
}

inline Mat swap(int n, int a, int b) {
  const long dim = 1L << n;
  Mat m = Mat::Zero(dim, dim);
  for (long s = 0; s < dim; ++s) {
    long t = s;
    if (bit(s, n, a) != bit(s, n, b)) t ^= (1L << (n - 1 - a)) | (1L << (n - 1 - b));
    m(t, s) = 1.0;
  }
  return m;
}

/// Tr_rest by explicit summation over the traced indices.
inline Mat partial_trace(const Mat& rho, int n, const std::vector<int>& keep) {
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
  const long dk = 1L << keep.size(), dr = 1L << rest.size();
  auto compose = [&](long ik, long ir) {
    long s = 0;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if ((ik >> (keep.size() - 1 - j)) & 1) s |= 1L << (n - 1 - keep[j]);
    for (std::size_t j = 0; j < rest.size(); ++j)
      if ((ir >> (rest.size() - 1 - j)) & 1) s |= 1L << (n - 1 - rest[j]);
    return s;
  };
  Mat out = Mat::Zero(dk, dk);
  for (long a = 0; a < dk; ++a)
    for (long b = 0; b < dk; ++b)
      for (long r = 0; r < dr; ++r) out(a, b) += rho(compose(a, r), compose(b, r));
  return out;
}

inline Mat random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = C(n(rng), n(rng));
  return (a + a.adjoint()) / 2.0;
}

inline Vec random_state(long dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec v(dim);
  for (long i = 0; i < dim; ++i) v(i) = C(n(rng), n(rng));
  return v / v.norm();
}

inline Mat random_density(int n_qubits, std::mt19937_64& rng) {
  const long dim = 1L << n_qubits;
  Mat a(dim, dim);
  std::normal_distribution<double> n(0.0, 1.0);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) a(i, j) = C(n(rng), n(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

/// exp(i s t H) through Eigen's self-adjoint solver.
inline Mat evolve(const Mat& h, double t, int s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd d = (es.eigenvalues().cast<C>() * C(0, s * t)).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace witp::oracle

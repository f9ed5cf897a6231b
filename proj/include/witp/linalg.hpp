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

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "witp/errors.hpp"

namespace witp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Ascending eigenvalues with the matching orthonormal eigenvectors as columns.
struct EigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
};

enum class Pauli : std::uint8_t { I, X, Y, Z };

char pauli_char(Pauli p);
ComplexMatrix pauli_matrix(Pauli p);

/// Tensor product of single-qubit Paulis with a global phase. Letter 0 is the
/// leftmost Kronecker factor.
struct PauliString {
  std::vector<Pauli> letters;
  Complex phase{1.0, 0.0};

  int size() const { return static_cast<int>(letters.size()); }
  ComplexMatrix matrix() const;
  std::string str() const;
};

struct PauliTerm {
  PauliString string;
  Complex coefficient;
};

// ---------------------------------------------------------------------------
// Elementwise helpers

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m.adjoint() * m -
                 ComplexMatrix::Identity(m.rows(), m.cols()));
}

constexpr Eigen::Index qubit_dim(int n_qubits) { return Eigen::Index{1} << n_qubits; }

/// Kronecker product with `a`'s index major.
template <typename A, typename B>
ComplexMatrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.template cast<Complex>().eval(),
                                 b.template cast<Complex>().eval());
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

// ---------------------------------------------------------------------------
// Operator construction

ComplexMatrix pauli_on(int n_qubits, int site, Pauli letter);

/// Jordan-Wigner annihilator c_i (1 <= i <= n_modes):
/// I x ... x I x a x Z x ... x Z, with a = |0><1| on qubit i-1 and Z on
/// every later qubit.
ComplexMatrix jw_annihilation(int n_modes, int i);

/// Majorana gamma_k, 0 <= k < 2 n_modes, from c = c_{k/2 + 1}:
/// even k -> c + c^dag, odd k -> i (c - c^dag).
ComplexMatrix majorana(int n_modes, int k);

/// Permutation matrix exchanging qubits a and b.
ComplexMatrix swap_matrix(int n_qubits, int a, int b);

/// All 16 Pauli strings supported on {a, b} with c = Tr(P^dag SWAP) / 2^n.
/// Strings touching other sites have zero coefficient and are omitted.
std::vector<PauliTerm> swap_pauli_decomposition(int n_qubits, int a, int b);

ComplexMatrix pauli_sum(std::span<const PauliTerm> terms);

// ---------------------------------------------------------------------------
// Spectral routines

/// Cyclic complex Jacobi. Sweeps visit (p, q) in row-major order p < q; the
/// result is sorted ascending (stable) and degenerate blocks are re-orthonormalised
/// by modified Gram-Schmidt in ascending original-column order.
/// Throws ValidationError on non-Hermitian input and NumericalError when 100
/// sweeps do not converge.
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// V diag(exp(sign * i * lambda * t)) V^dag.
ComplexMatrix evolve(const EigenSystem& es, double t, int sign);
ComplexMatrix evolve(const ComplexMatrix& h, double t, int sign);

/// Reconstruct V diag(f(lambda)) V^dag for a real function f.
template <typename F>
ComplexMatrix spectral_apply(const EigenSystem& es, F&& f) {
  const Eigen::VectorXcd d = es.eigenvalues.unaryExpr([&](double x) { return Complex(f(x)); });
  return es.eigenvectors * d.asDiagonal() * es.eigenvectors.adjoint();
}

// ---------------------------------------------------------------------------
// States

/// Reduced density matrix on `keep` (strictly increasing sites).
ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_qubits, std::span<const int> keep);

/// Same as partial_trace(|psi><psi|, ...) without forming the full projector.
ComplexMatrix reduced_density(const StateVector& psi, int n_qubits, std::span<const int> keep);

Complex expectation(const StateVector& state, const ComplexMatrix& op);

/// <Z_site> read directly from probabilities.
double z_expectation(const StateVector& state, int n_qubits, int site);

/// Apply a 2^k x 2^k operator to the contiguous qubits [first, first + k).
void apply_block(StateVector& state, int n_qubits, int first, const ComplexMatrix& op);

/// Exchange qubits a and b in place.
void apply_swap(StateVector& state, int n_qubits, int a, int b);

/// Multiply amplitude s by phases[s].
void apply_diagonal(StateVector& state, const Eigen::VectorXcd& phases);

}  // namespace witp

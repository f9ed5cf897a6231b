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

#include "witp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace witp {
namespace {

Eigen::Index bit_of(int n_qubits, int site) { return Eigen::Index{1} << (n_qubits - 1 - site); }

void require_site(int n_qubits, int site, const char* what) {
  if (site < 0 || site >= n_qubits)
    throw ValidationError(std::string(what) + ": site " + std::to_string(site) +
                          " outside register of " + std::to_string(n_qubits) + " qubits");
}

void require_register(Eigen::Index dim, int n_qubits, const char* what) {
  if (n_qubits < 0 || n_qubits > 20 || dim != qubit_dim(n_qubits))
    throw ValidationError(std::string(what) + ": dimension " + std::to_string(dim) +
                          " does not match " + std::to_string(n_qubits) + " qubits");
}

/// Bit masks (in full-register index space) for the kept sites and the rest.
struct SiteSplit {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> traced;

  SiteSplit(int n_qubits, std::span<const int> keep) {
    for (std::size_t i = 0; i < keep.size(); ++i) {
      require_site(n_qubits, keep[i], "partial_trace");
      if (i > 0 && keep[i] <= keep[i - 1])
        throw ValidationError("partial_trace: keep sites must be strictly increasing");
    }
    std::vector<bool> is_kept(n_qubits, false);
    for (int s : keep) is_kept[s] = true;
    for (int s = 0; s < n_qubits; ++s)
      (is_kept[s] ? kept : traced).push_back(bit_of(n_qubits, s));
  }

  static Eigen::Index scatter(Eigen::Index value, const std::vector<Eigen::Index>& masks) {
    // masks are listed most-significant site first
    Eigen::Index out = 0;
    const auto k = static_cast<Eigen::Index>(masks.size());
    for (Eigen::Index i = 0; i < k; ++i)
      if (value & (Eigen::Index{1} << (k - 1 - i))) out |= masks[i];
    return out;
  }
};

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

ComplexMatrix pauli_matrix(Pauli p) {
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

ComplexMatrix PauliString::matrix() const {
  std::vector<ComplexMatrix> factors;
  factors.reserve(letters.size());
  for (Pauli p : letters) factors.push_back(pauli_matrix(p));
  return phase * kron_all(factors);
}

std::string PauliString::str() const {
  std::string s;
  for (Pauli p : letters) s.push_back(pauli_char(p));
  return s;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix pauli_on(int n_qubits, int site, Pauli letter) {
  require_site(n_qubits, site, "pauli_on");
  PauliString s{std::vector<Pauli>(n_qubits, Pauli::I)};
  s.letters[site] = letter;
  return s.matrix();
}

ComplexMatrix jw_annihilation(int n_modes, int i) {
  if (n_modes < 1 || i < 1 || i > n_modes)
    throw ValidationError("jw_annihilation: mode " + std::to_string(i) + " outside 1.." +
                          std::to_string(n_modes));
  ComplexMatrix lowering(2, 2);
  lowering << 0, 1, 0, 0;
  std::vector<ComplexMatrix> factors;
  for (int q = 0; q < n_modes; ++q) {
    if (q < i - 1)
      factors.push_back(ComplexMatrix::Identity(2, 2));
    else if (q == i - 1)
      factors.push_back(lowering);
    else
      factors.push_back(pauli_matrix(Pauli::Z));
  }
  return kron_all(factors);
}

ComplexMatrix majorana(int n_modes, int k) {
  if (n_modes < 1 || k < 0 || k >= 2 * n_modes)
    throw ValidationError("majorana: index " + std::to_string(k) + " outside 0.." +
                          std::to_string(2 * n_modes - 1));
  const ComplexMatrix c = jw_annihilation(n_modes, k / 2 + 1);
  if (k % 2 == 0) return c + c.adjoint();
  return kI * (c - c.adjoint());
}

ComplexMatrix swap_matrix(int n_qubits, int a, int b) {
  require_site(n_qubits, a, "swap_matrix");
  require_site(n_qubits, b, "swap_matrix");
  const Eigen::Index dim = qubit_dim(n_qubits);
  const Eigen::Index ma = bit_of(n_qubits, a), mb = bit_of(n_qubits, b);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    Eigen::Index t = s & ~(ma | mb);
    if (s & ma) t |= mb;
    if (s & mb) t |= ma;
    m(t, s) = 1.0;
  }
  return m;
}

std::vector<PauliTerm> swap_pauli_decomposition(int n_qubits, int a, int b) {
  require_site(n_qubits, a, "swap_pauli_decomposition");
  require_site(n_qubits, b, "swap_pauli_decomposition");
  if (a == b) throw ValidationError("swap_pauli_decomposition: sites must differ");
  const ComplexMatrix swap = swap_matrix(n_qubits, a, b);
  const double norm = static_cast<double>(qubit_dim(n_qubits));
  constexpr Pauli kAll[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  std::vector<PauliTerm> terms;
  for (Pauli pa : kAll) {
    for (Pauli pb : kAll) {
      PauliString s{std::vector<Pauli>(n_qubits, Pauli::I)};
      s.letters[a] = pa;
      s.letters[b] = pb;
      const Complex c = (s.matrix().adjoint() * swap).trace() / norm;
      terms.push_back({std::move(s), c});
    }
  }
  return terms;
}

ComplexMatrix pauli_sum(std::span<const PauliTerm> terms) {
  if (terms.empty()) throw ValidationError("pauli_sum: no terms");
  const Eigen::Index dim = qubit_dim(terms.front().string.size());
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : terms) out += t.coefficient * t.string.matrix();
  return out;
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw ValidationError("hermitian_eig: matrix must be square and non-empty");
  const double scale = std::max(1.0, max_abs(h));
  if (hermiticity_error(h) > 1e-10 * scale)
    throw ValidationError("hermitian_eig: input is not Hermitian");

  const Eigen::Index n = h.rows();
  ComplexMatrix a = (h + h.adjoint()) * 0.5;
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double fro = a.norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < n; ++p)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (fro == 0.0 || off_norm() <= 1e-14 * fro) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300 || mag <= 1e-18 * fro) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex gpp = c, gpq = s;
        const Complex gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }
  if (!converged)
    throw NumericalError("hermitian_eig: no convergence after 100 Jacobi sweeps");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem es{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    es.eigenvalues(i) = a(order[i], order[i]).real();
    es.eigenvectors.col(i) = v.col(order[i]);
  }

  const double tie = 1e-10 * std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && es.eigenvalues(end) - es.eigenvalues(end - 1) <= tie) ++end;
    for (Eigen::Index i = start; i < end; ++i) {
      for (Eigen::Index j = start; j < i; ++j) {
        const Complex proj = es.eigenvectors.col(j).dot(es.eigenvectors.col(i));
        es.eigenvectors.col(i) -= proj * es.eigenvectors.col(j);
      }
      es.eigenvectors.col(i).normalize();
    }
    start = end;
  }
  return es;
}

ComplexMatrix evolve(const EigenSystem& es, double t, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("evolve: sign must be +1 or -1");
  const Eigen::VectorXcd phases =
      es.eigenvalues.unaryExpr([&](double x) { return std::exp(Complex(0.0, sign * x * t)); });
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

ComplexMatrix evolve(const ComplexMatrix& h, double t, int sign) {
  return evolve(hermitian_eig(h), t, sign);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_qubits, std::span<const int> keep) {
  if (rho.rows() != rho.cols()) throw ValidationError("partial_trace: matrix must be square");
  require_register(rho.rows(), n_qubits, "partial_trace");
  const SiteSplit split(n_qubits, keep);
  const Eigen::Index dk = Eigen::Index{1} << split.kept.size();
  const Eigen::Index de = Eigen::Index{1} << split.traced.size();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index e = 0; e < de; ++e) {
    const Eigen::Index off = SiteSplit::scatter(e, split.traced);
    for (Eigen::Index j = 0; j < dk; ++j) {
      const Eigen::Index col = off | SiteSplit::scatter(j, split.kept);
      for (Eigen::Index i = 0; i < dk; ++i)
        out(i, j) += rho(off | SiteSplit::scatter(i, split.kept), col);
    }
  }
  return out;
}

ComplexMatrix reduced_density(const StateVector& psi, int n_qubits, std::span<const int> keep) {
  require_register(psi.size(), n_qubits, "reduced_density");
  const SiteSplit split(n_qubits, keep);
  const Eigen::Index dk = Eigen::Index{1} << split.kept.size();
  const Eigen::Index de = Eigen::Index{1} << split.traced.size();
  ComplexMatrix m(dk, de);
  for (Eigen::Index e = 0; e < de; ++e) {
    const Eigen::Index off = SiteSplit::scatter(e, split.traced);
    for (Eigen::Index i = 0; i < dk; ++i) m(i, e) = psi(off | SiteSplit::scatter(i, split.kept));
  }
  return m * m.adjoint();
}

Complex expectation(const StateVector& state, const ComplexMatrix& op) {
  if (op.rows() != op.cols() || op.rows() != state.size())
    throw ValidationError("expectation: dimension mismatch");
  return state.dot(op * state);
}

double z_expectation(const StateVector& state, int n_qubits, int site) {
  require_register(state.size(), n_qubits, "z_expectation");
  require_site(n_qubits, site, "z_expectation");
  const Eigen::Index mask = bit_of(n_qubits, site);
  double acc = 0.0;
  for (Eigen::Index s = 0; s < state.size(); ++s)
    acc += (s & mask ? -1.0 : 1.0) * std::norm(state(s));
  return acc;
}

void apply_block(StateVector& state, int n_qubits, int first, const ComplexMatrix& op) {
  require_register(state.size(), n_qubits, "apply_block");
  const Eigen::Index dk = op.rows();
  int k = 0;
  while ((Eigen::Index{1} << k) < dk) ++k;
  if (op.cols() != dk || (Eigen::Index{1} << k) != dk || first < 0 || first + k > n_qubits)
    throw ValidationError("apply_block: operator does not fit the register");
  const Eigen::Index dlo = Eigen::Index{1} << (n_qubits - first - k);
  const Eigen::Index dhi = Eigen::Index{1} << first;
  const ComplexMatrix op_t = op.transpose();
  for (Eigen::Index hi = 0; hi < dhi; ++hi) {
    Eigen::Map<ComplexMatrix> block(state.data() + hi * dk * dlo, dlo, dk);
    block = (block * op_t).eval();
  }
}

void apply_swap(StateVector& state, int n_qubits, int a, int b) {
  require_register(state.size(), n_qubits, "apply_swap");
  require_site(n_qubits, a, "apply_swap");
  require_site(n_qubits, b, "apply_swap");
  if (a == b) return;
  const Eigen::Index ma = bit_of(n_qubits, a), mb = bit_of(n_qubits, b);
  for (Eigen::Index s = 0; s < state.size(); ++s)
    if ((s & ma) && !(s & mb)) std::swap(state(s), state((s & ~ma) | mb));
}

void apply_diagonal(StateVector& state, const Eigen::VectorXcd& phases) {
  if (phases.size() != state.size()) throw ValidationError("apply_diagonal: dimension mismatch");
  state.array() *= phases.array();
}

}  // namespace witp

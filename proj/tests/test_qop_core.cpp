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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "witp/linalg.hpp"
#include "witp/random.hpp"

using namespace witp;
namespace orc = witp::oracle;

TEST_CASE("kron") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);

  ComplexMatrix zi = ComplexMatrix::Zero(4, 4);
  zi.diagonal() << 1, 1, -1, -1;
  CHECK(max_abs(kron(pauli_matrix(Pauli::Z), i2) - zi) == 0.0);

  CHECK(max_abs(kron(pauli_matrix(Pauli::X), pauli_matrix(Pauli::Z)) - orc::brute_kron(orc::pauli('X'), orc::pauli('Z'))) ==
        0.0);

  std::mt19937_64 rng(7);
  const auto a = orc::random_hermitian(3, rng), b = orc::random_hermitian(4, rng);
  CHECK(max_abs(kron(a, b) - orc::brute_kron(a, b)) == 0.0);
}

TEST_CASE("pauli_on") {
  CHECK(max_abs(pauli_on(1, 0, Pauli::Z) - orc::pauli('Z')) == 0.0);
  CHECK(max_abs(pauli_on(2, 1, Pauli::X) - orc::pauli_string("IX")) == 0.0);
  const ComplexMatrix y = pauli_on(3, 0, Pauli::Y);
  CHECK(max_abs(y * y - ComplexMatrix::Identity(8, 8)) == 0.0);
  CHECK_THROWS_AS(pauli_on(2, 2, Pauli::X), ValidationError);
  CHECK_THROWS_AS(pauli_on(2, -1, Pauli::X), ValidationError);
}

TEST_CASE("PauliString realization") {
  PauliString s{{Pauli::X, Pauli::Y, Pauli::Z}, Complex(-1.0)};
  const ComplexMatrix m = s.matrix();
  CHECK(max_abs(m + orc::pauli_string("XYZ")) == 0.0);
  CHECK(hermiticity_error(m) == 0.0);
  CHECK(unitarity_error(m) == 0.0);
  CHECK(s.str().find("XYZ") != std::string::npos);
}

TEST_CASE("jw_annihilation") {
  ComplexMatrix c1(2, 2);
  c1 << 0, 1, 0, 0;
  CHECK(max_abs(jw_annihilation(1, 1) - c1) == 0.0);

  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i) CHECK(max_abs(jw_annihilation(n, i) - orc::jw_annihilation(n, i)) == 0.0);

  const ComplexMatrix a = jw_annihilation(2, 1), b = jw_annihilation(2, 2);
  CHECK(orc::max_abs(a * b + b * a) == 0.0);

  const ComplexMatrix c2 = jw_annihilation(3, 2);
  CHECK(orc::max_abs(c2 * c2.adjoint() + c2.adjoint() * c2 - ComplexMatrix::Identity(8, 8)) == 0.0);

  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const ComplexMatrix ci = jw_annihilation(3, i), cj = jw_annihilation(3, j);
      const ComplexMatrix acd = ci * cj.adjoint() + cj.adjoint() * ci;
      const ComplexMatrix expect = (i == j ? 1.0 : 0.0) * ComplexMatrix::Identity(8, 8);
      CHECK(max_abs(acd - expect) <= 1e-12);
      CHECK(max_abs(ci * cj + cj * ci) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(jw_annihilation(3, 0), ValidationError);
  CHECK_THROWS_AS(jw_annihilation(3, 4), ValidationError);
}

TEST_CASE("majorana") {
  CHECK(max_abs(majorana(1, 0) - orc::pauli('X')) == 0.0);
  ComplexMatrix g1(2, 2);
  g1 << 0, kI, -kI, 0;
  CHECK(max_abs(majorana(1, 1) - g1) == 0.0);

  for (int n = 1; n <= 4; ++n) {
    const ComplexMatrix id = ComplexMatrix::Identity(qubit_dim(n), qubit_dim(n));
    CHECK(max_abs(majorana(n, 0) * majorana(n, 1) + majorana(n, 1) * majorana(n, 0)) <= 1e-12);
    for (int a = 0; a < 2 * n; ++a) {
      CHECK(max_abs(majorana(n, a) - orc::majorana(n, a)) == 0.0);
      CHECK(hermiticity_error(majorana(n, a)) == 0.0);
      for (int b = 0; b < 2 * n; ++b) {
        ComplexMatrix ac = majorana(n, a) * majorana(n, b) + majorana(n, b) * majorana(n, a);
        if (a == b) ac -= 2.0 * id;
        CHECK(max_abs(ac) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(majorana(2, 4), ValidationError);
}

TEST_CASE("hermitian_eig examples") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  const EigenSystem es = hermitian_eig(d);
  CHECK(es.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(es.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(es.eigenvalues(2) == doctest::Approx(3.0));

  const EigenSystem x = hermitian_eig(pauli_matrix(Pauli::X));
  CHECK(x.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(x.eigenvalues(1) == doctest::Approx(1.0));

  std::mt19937_64 rng(11);
  const auto h = orc::random_hermitian(8, rng);
  const EigenSystem r = hermitian_eig(h);
  const ComplexMatrix rebuilt = r.eigenvectors * r.eigenvalues.cast<Complex>().asDiagonal() * r.eigenvectors.adjoint();
  CHECK(max_abs(rebuilt - h) <= 1e-9);

  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(bad), ValidationError);
}

TEST_CASE("hermitian_eig agrees with an independent solver on 200 random matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim_dist(2, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = dim_dist(rng);
    const auto h = orc::random_hermitian(dim, rng);
    const EigenSystem es = hermitian_eig(h);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    CHECK(max_abs(es.eigenvalues - ref.eigenvalues()) <= 1e-10 * scale * dim);
    const ComplexMatrix rebuilt =
        es.eigenvectors * es.eigenvalues.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    CHECK(max_abs(rebuilt - h) <= 1e-9 * dim);
    CHECK(unitarity_error(es.eigenvectors) <= 1e-10);
    for (Eigen::Index i = 1; i < es.dim(); ++i) CHECK(es.eigenvalues(i) >= es.eigenvalues(i - 1));
    CHECK(max_abs(h * es.eigenvectors - es.eigenvectors * es.eigenvalues.cast<Complex>().asDiagonal()) <=
          1e-9 * std::max(1.0, h.norm()));
  }
}

TEST_CASE("hermitian_eig is deterministic and orthonormal on degenerate spectra") {
  const ComplexMatrix h = kron(pauli_matrix(Pauli::Z), ComplexMatrix::Identity(4, 4)) +
                          0.5 * kron(ComplexMatrix::Identity(4, 4), pauli_matrix(Pauli::X));
  const EigenSystem a = hermitian_eig(h), b = hermitian_eig(h);
  CHECK(max_abs(a.eigenvectors - b.eigenvectors) == 0.0);
  CHECK(max_abs(a.eigenvalues - b.eigenvalues) == 0.0);
  CHECK(unitarity_error(a.eigenvectors) <= 1e-12);
}

TEST_CASE("evolve") {
  const ComplexMatrix u = evolve(pauli_matrix(Pauli::X), std::numbers::pi / 2, -1);
  CHECK(max_abs(u + kI * pauli_matrix(Pauli::X)) <= 1e-14);

  std::mt19937_64 rng(5);
  const auto h = orc::random_hermitian(8, rng);
  CHECK(max_abs(evolve(h, 0.0, -1) - ComplexMatrix::Identity(8, 8)) <= 1e-12);
  const double t1 = 0.37, t2 = 1.91;
  CHECK(max_abs(evolve(h, t1, -1) * evolve(h, t2, -1) - evolve(h, t1 + t2, -1)) <= 1e-10);
  CHECK(max_abs(evolve(h, t1, +1) * evolve(h, t1, -1) - ComplexMatrix::Identity(8, 8)) <= 1e-10);
  CHECK(max_abs(evolve(h, 2.3, -1) - orc::evolve(h, 2.3, -1)) <= 1e-10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto hr = orc::random_hermitian(16, rng);
    CHECK(unitarity_error(evolve(hr, 10.0 * trial, -1)) <= 1e-10);
  }
  CHECK_THROWS_AS(evolve(h, 1.0, 0), ValidationError);
}

TEST_CASE("partial_trace") {
  StateVector phi = StateVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
  const std::vector<int> first = {0};
  CHECK(max_abs(partial_trace(phi * phi.adjoint(), 2, first) - ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-15);

  std::mt19937_64 rng(3);
  const auto ra = orc::random_density(1, rng), rb = orc::random_density(2, rng);
  CHECK(max_abs(partial_trace(kron(ra, rb), 3, first) - ra) <= 1e-14);

  const auto psi = orc::random_state(16, rng);
  const std::vector<int> keep = {0, 1};
  const ComplexMatrix reduced = partial_trace(psi * psi.adjoint(), 4, keep);
  CHECK(std::abs(reduced.trace() - Complex(1.0)) <= 1e-12);
  CHECK(max_abs(reduced - orc::partial_trace(psi * psi.adjoint(), 4, keep)) <= 1e-14);

  const std::vector<int> unsorted = {1, 0};
  CHECK_THROWS_AS(partial_trace(psi * psi.adjoint(), 4, unsorted), ValidationError);
  const std::vector<int> outside = {4};
  CHECK_THROWS_AS(partial_trace(psi * psi.adjoint(), 4, outside), ValidationError);
}

TEST_CASE("partial_trace preserves trace and positivity on 100 random density matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const auto rho = orc::random_density(n, rng);
    std::vector<int> keep;
    for (int q = 0; q < n; ++q)
      if ((trial >> q) & 1 || q == 0) keep.push_back(q);
    const ComplexMatrix r = partial_trace(rho, n, keep);
    CHECK(max_abs(r - orc::partial_trace(rho, n, keep)) <= 1e-13);
    CHECK(std::abs(r.trace() - Complex(1.0)) <= 1e-12);
    CHECK(hermiticity_error(r) <= 1e-13);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("reduced_density matches the projector route") {
  std::mt19937_64 rng(8);
  const auto psi = orc::random_state(128, rng);
  for (const std::vector<int>& keep : {std::vector<int>{6}, std::vector<int>{5, 6}, std::vector<int>{0, 3, 4}}) {
    CHECK(max_abs(reduced_density(psi, 7, keep) - orc::partial_trace(psi * psi.adjoint(), 7, keep)) <= 1e-14);
  }
}

TEST_CASE("expectation") {
  StateVector zero(2);
  zero << 1, 0;
  CHECK(expectation(zero, pauli_matrix(Pauli::Z)).real() == 1.0);

  StateVector phi = StateVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
  CHECK(expectation(phi, orc::pauli_string("XX")).real() == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(4);
  const auto psi = orc::random_state(8, rng);
  CHECK(std::abs(expectation(psi, ComplexMatrix::Identity(8, 8)) - Complex(1.0)) <= 1e-14);

  const auto h = orc::random_hermitian(8, rng);
  const Complex e = expectation(psi, h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  CHECK(std::abs(e.imag()) <= 1e-10);
  CHECK(e.real() >= es.eigenvalues().minCoeff() - 1e-12);
  CHECK(e.real() <= es.eigenvalues().maxCoeff() + 1e-12);
  CHECK_THROWS_AS(expectation(psi, ComplexMatrix::Identity(4, 4)), ValidationError);

  for (int site = 0; site < 3; ++site)
    CHECK(z_expectation(psi, 3, site) == doctest::Approx(expectation(psi, pauli_on(3, site, Pauli::Z)).real()));
}

TEST_CASE("swap_pauli_decomposition") {
  // Oracle: c_P = Tr(P^dag SWAP) / 4 over all 16 two-qubit strings.
  const ComplexMatrix swap2 = orc::swap(2, 0, 1);
  const auto terms = swap_pauli_decomposition(2, 0, 1);
  CHECK(terms.size() == 16);
  for (const auto& term : terms) {
    const std::string s = term.string.str();
    const std::string letters = s.substr(s.size() - 2);
    const Complex expect = (orc::pauli_string(letters).adjoint() * swap2).trace() / 4.0;
    CHECK(std::abs(term.coefficient - expect) <= 1e-15);
    const bool diagonal = letters[0] == letters[1];
    CHECK(std::abs(term.coefficient - (diagonal ? 0.5 : 0.0)) <= 1e-15);
  }
  CHECK(max_abs(pauli_sum(terms) - swap2) <= 1e-12);
  CHECK(max_abs(swap_matrix(2, 0, 1) * swap_matrix(2, 0, 1) - ComplexMatrix::Identity(4, 4)) == 0.0);
  CHECK_THROWS_AS(swap_pauli_decomposition(3, 1, 1), ValidationError);
}

TEST_CASE("swap decomposition reconstructs every pair up to 4 qubits") {
  for (int n = 2; n <= 4; ++n) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        CHECK(max_abs(swap_matrix(n, a, b) - orc::swap(n, a, b)) == 0.0);
        const auto terms = swap_pauli_decomposition(n, a, b);
        CHECK(max_abs(pauli_sum(terms) - orc::swap(n, a, b)) <= 1e-12);
        for (const auto& t : terms)
          for (int q = 0; q < n; ++q)
            if (q != a && q != b) CHECK(t.string.letters[q] == Pauli::I);
      }
    }
  }
}

TEST_CASE("state helpers agree with dense operators") {
  std::mt19937_64 rng(21);
  const int n = 5;
  const auto psi = orc::random_state(32, rng);

  const auto op = orc::random_hermitian(4, rng);
  StateVector a = psi;
  apply_block(a, n, 2, op);
  const ComplexMatrix full = kron(kron(ComplexMatrix::Identity(4, 4), op), ComplexMatrix::Identity(2, 2));
  CHECK(max_abs(a - full * psi) <= 1e-13);

  StateVector b = psi;
  apply_swap(b, n, 1, 4);
  CHECK(max_abs(b - orc::swap(n, 1, 4) * psi) == 0.0);

  Eigen::VectorXcd phases(32);
  for (int s = 0; s < 32; ++s) phases(s) = std::polar(1.0, 0.1 * s);
  StateVector c = psi;
  apply_diagonal(c, phases);
  CHECK(max_abs(c - phases.asDiagonal() * psi) <= 1e-15);

  StateVector d = psi;
  CHECK_THROWS_AS(apply_block(d, n, 4, op), ValidationError);
}

TEST_CASE("derived seeds and the Gaussian stream") {
  static_assert(derive_seed(1, "x", 0) != derive_seed(1, "x", 1));
  CHECK(derive_seed(3, "syk-coupling", 4) == derive_seed(3, "syk-coupling", 4));
  CHECK(derive_seed(3, "syk-coupling", 4) != derive_seed(3, "tfim-field", 4));

  RandomStream s(42);
  double sum = 0.0, sum_sq = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = s.gaussian();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n, var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(n));
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));

  RandomStream u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}

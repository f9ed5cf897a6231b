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

#include "witp/models.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "witp/random.hpp"

namespace witp {

ComplexMatrix RegisterLayout::embed(Side side, const ComplexMatrix& op) const {
  if (op.rows() != qubit_dim(n_side) || op.cols() != op.rows())
    throw ValidationError("RegisterLayout::embed: operator does not match side size");
  const int before = first(side);
  const int after = total() - before - n_side;
  return kron(kron(ComplexMatrix::Identity(qubit_dim(before), qubit_dim(before)), op),
              ComplexMatrix::Identity(qubit_dim(after), qubit_dim(after)));
}

double SykCouplings::variance() const {
  double fact = 1.0;
  for (int k = 2; k < q; ++k) fact *= k;
  return j_scale * j_scale * fact / std::pow(static_cast<double>(n_majorana), q - 1);
}

SykCouplings sample_syk_couplings(int n, int q, double j_scale, std::uint64_t seed) {
  if (q != 4) throw ValidationError("sample_syk_couplings: only q = 4 is supported");
  if (n < q) throw ValidationError("sample_syk_couplings: need n >= q");
  if (n % 2 != 0) throw ValidationError("sample_syk_couplings: n must be even (Majorana pairs)");

  SykCouplings c{n, q, j_scale, seed, {}};
  const double sigma = std::sqrt(c.variance());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          RandomStream rng(derive_seed(seed, "syk-coupling", rank++));
          c.entries.push_back({{i, j, k, l}, sigma * rng.gaussian()});
        }
  return c;
}

ComplexMatrix syk_side_hamiltonian(const SykCouplings& c) {
  const int modes = c.n_modes();
  std::vector<ComplexMatrix> gamma;
  for (int k = 0; k < c.n_majorana; ++k) gamma.push_back(majorana(modes, k));
  const Eigen::Index dim = qubit_dim(modes);
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  constexpr double kInvQFactorial = 1.0 / 24.0;
  for (const auto& e : c.entries) {
    const auto& [i, j, k, l] = e.index;
    h -= (kInvQFactorial * e.value) * (gamma[i] * gamma[j] * gamma[k] * gamma[l]);
  }
  return h;
}

ComplexMatrix build_syk_hamiltonian(const SykCouplings& c, Side side, const RegisterLayout& layout) {
  if (layout.n_side != c.n_modes())
    throw ValidationError("build_syk_hamiltonian: register side has " +
                          std::to_string(layout.n_side) + " qubits but couplings need " +
                          std::to_string(c.n_modes()));
  return layout.embed(side, syk_side_hamiltonian(c));
}

void write_couplings(std::ostream& out, const SykCouplings& c) {
  out << "# n_majorana " << c.n_majorana << "\n"
      << "# q " << c.q << "\n"
      << "# j_scale " << std::setprecision(17) << c.j_scale << "\n"
      << "# seed " << c.seed << "\n"
      << "# i j k l value\n";
  for (const auto& e : c.entries)
    out << e.index[0] << ' ' << e.index[1] << ' ' << e.index[2] << ' ' << e.index[3] << ' '
        << std::setprecision(17) << e.value << '\n';
}

SykCouplings read_couplings(std::istream& in) {
  SykCouplings c;
  c.entries.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "n_majorana") ls >> c.n_majorana;
      else if (key == "q") ls >> c.q;
      else if (key == "j_scale") ls >> c.j_scale;
      else if (key == "seed") ls >> c.seed;
      continue;
    }
    SykCoupling e{};
    if (!(ls >> e.index[0] >> e.index[1] >> e.index[2] >> e.index[3] >> e.value))
      throw ValidationError("read_couplings: malformed row at line " + std::to_string(lineno));
    for (int a = 0; a < 4; ++a)
      if (e.index[a] < 0 || e.index[a] >= c.n_majorana || (a > 0 && e.index[a] <= e.index[a - 1]))
        throw ValidationError("read_couplings: bad index quadruple at line " + std::to_string(lineno));
    c.entries.push_back(e);
  }
  return c;
}

TfimParams make_tfim_params(int n_sites, std::uint64_t seed, double h_width, bool periodic) {
  if (n_sites < 2) throw ValidationError("make_tfim_params: need at least 2 sites");
  TfimParams p;
  p.n_sites = n_sites;
  p.seed = seed;
  p.h_width = h_width;
  p.periodic = periodic;
  for (int i = 0; i < n_sites; ++i) {
    RandomStream rng(derive_seed(seed, "tfim-field", static_cast<std::uint64_t>(i)));
    p.h_fields.push_back(h_width * rng.gaussian());
  }
  return p;
}

ComplexMatrix build_tfim_floquet(const TfimParams& p) {
  const int n = p.n_sites;
  if (n < 2) throw ValidationError("build_tfim_floquet: need at least 2 sites");
  if (static_cast<int>(p.h_fields.size()) != n)
    throw ValidationError("build_tfim_floquet: h_fields size does not match n_sites");

  const Eigen::Index dim = qubit_dim(n);
  ComplexMatrix kick = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) kick += pauli_on(n, i, Pauli::X);
  const ComplexMatrix kick_u = evolve(kick * p.b_field, 1.0, +1);

  // Z-type generator is diagonal in the computational basis.
  Eigen::VectorXcd ising_phase(dim);
  const int bonds = (p.periodic && n > 2) ? n : n - 1;
  for (Eigen::Index s = 0; s < dim; ++s) {
    auto z = [&](int site) { return (s >> (n - 1 - site)) & 1 ? -1.0 : 1.0; };
    double e = 0.0;
    for (int b = 0; b < bonds; ++b) e += p.j_coupling * z(b) * z((b + 1) % n);
    for (int i = 0; i < n; ++i) e += p.h_fields[i] * z(i);
    ising_phase(s) = std::exp(Complex(0.0, e));
  }
  return kick_u * ising_phase.asDiagonal();
}

}  // namespace witp

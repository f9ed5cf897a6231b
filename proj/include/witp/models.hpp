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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "witp/linalg.hpp"

namespace witp {

enum class Side { Left, Right };

/// Qubit register [message | left side | right side]; site 0 is the leftmost
/// Kronecker factor.
struct RegisterLayout {
  int n_message = 1;
  int n_side = 3;

  int total() const { return n_message + 2 * n_side; }
  int left_first() const { return n_message; }
  int right_first() const { return n_message + n_side; }
  int first(Side s) const { return s == Side::Left ? left_first() : right_first(); }
  int left_site(int k) const { return left_first() + k; }
  int right_site(int k) const { return right_first() + k; }
  bool in_left(int site) const { return site >= left_first() && site < right_first(); }
  bool in_right(int site) const { return site >= right_first() && site < total(); }

  /// Embed a side-local operator into the full register.
  ComplexMatrix embed(Side side, const ComplexMatrix& op) const;
};

// ---------------------------------------------------------------------------
// SYK

struct SykCoupling {
  std::array<int, 4> index;  // strictly increasing Majorana indices
  double value;
};

struct SykCouplings {
  int n_majorana = 6;
  int q = 4;
  double j_scale = 1.0;
  std::uint64_t seed = 0;
  std::vector<SykCoupling> entries;  // lexicographic order of index quadruples

  /// sigma^2 = J^2 (q-1)! / N^(q-1)
  double variance() const;
  int n_modes() const { return n_majorana / 2; }
};

/// Coupling number k (lexicographic rank of its quadruple) is drawn from
/// substream derive_seed(seed, "syk-coupling", k).
SykCouplings sample_syk_couplings(int n, int q, double j_scale, std::uint64_t seed);

/// H = -(1/q!) sum_{i<j<k<l} J_ijkl g_i g_j g_k g_l on the N/2 qubits of one side.
ComplexMatrix syk_side_hamiltonian(const SykCouplings& c);

/// Side Hamiltonian embedded in `layout` (identity elsewhere).
ComplexMatrix build_syk_hamiltonian(const SykCouplings& c, Side side, const RegisterLayout& layout);

/// Plain-text table: '#' header lines then "i j k l value" rows.
void write_couplings(std::ostream& out, const SykCouplings& c);
SykCouplings read_couplings(std::istream& in);

// ---------------------------------------------------------------------------
// Floquet transverse-field Ising model

struct TfimParams {
  int n_sites = 3;
  double j_coupling = 0.785398163397448309616;  // pi/4
  double b_field = 0.785398163397448309616;     // pi/4
  std::vector<double> h_fields;
  double h_width = 0.5;
  std::uint64_t seed = 0;
  bool periodic = false;
};

/// Self-dual defaults with h_i = h_width * N(0,1) from substream
/// derive_seed(seed, "tfim-field", i).
TfimParams make_tfim_params(int n_sites, std::uint64_t seed, double h_width = 0.5,
                            bool periodic = false);

/// U = exp(i b sum X_i) exp(i J sum Z_i Z_{i+1} + i sum h_i Z_i).
ComplexMatrix build_tfim_floquet(const TfimParams& p);

}  // namespace witp

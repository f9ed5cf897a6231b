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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "witp/linalg.hpp"
#include "witp/models.hpp"
#include "witp/tfd.hpp"

namespace witp {

// ---------------------------------------------------------------------------
// Configuration

enum class MessageKind { BasisZero, Arbitrary, BellPhiPlus };

struct Message {
  MessageKind kind = MessageKind::BasisZero;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  static Message basis_zero() { return {}; }
  static Message arbitrary(Complex a, Complex b) { return {MessageKind::Arbitrary, a, b}; }
  static Message bell_phi_plus() { return {MessageKind::BellPhiPlus, {}, {}}; }

  int n_qubits() const { return kind == MessageKind::BellPhiPlus ? 2 : 1; }
  StateVector vector() const;
};

/// D01 / D02: SWAP of message qubit 0 with register site 1 / 2 (left qubits 0 / 1).
/// BellSequential: SWAP(0,2) then SWAP(1,3).
enum class SwapVariant { D01, D02, BellSequential };

enum class ModelKind { Syk, Tfim };

struct ModelSpec {
  ModelKind kind = ModelKind::Syk;
  std::uint64_t seed = 0;
  int n_majorana = 6;  // per side; TFIM uses n_majorana / 2 sites per side
  double j_scale = 1.0;
  double tfim_h_width = 0.5;
  bool tfim_periodic = false;

  int n_side() const { return n_majorana / 2; }
};

struct ProtocolConfig {
  Message message;
  SwapVariant swap_variant = SwapVariant::D01;
  double g = 0.0;
  double t = 0.0;  // Floquet step count for TFIM
  double beta = 0.0;
  ModelSpec model;
  /// 0-based Dirac modes of the combined [left | right] block. Empty selects
  /// modes 1 .. 2 n_side - 1 (1-based 2..N).
  std::vector<int> size_modes;
  /// Absolute register sites. Empty selects the last right qubit (one-qubit
  /// messages) or the last two right qubits (Bell message).
  std::vector<int> readout_sites;
  bool conjugate_right = true;

  RegisterLayout layout() const;
  std::vector<int> effective_size_modes() const;
  std::vector<int> effective_readout_sites() const;
  /// Register sites exchanged by the INSERT operator, in circuit order.
  std::vector<std::pair<int, int>> swap_pairs() const;
  /// Throws ValidationError naming the offending field.
  void validate() const;
};

std::string to_string(SwapVariant v);
std::string to_string(MessageKind k);
std::string to_string(ModelKind k);

// ---------------------------------------------------------------------------
// Operators

/// Sum of JW number operators n_s = |1><1|_s over `sites`; diagonal with
/// integer eigenvalues.
struct SizeOperator {
  int n_qubits = 0;
  std::vector<int> sites;
  Eigen::VectorXi eigenvalues;  // per computational basis state

  ComplexMatrix matrix() const;
  /// Diagonal of exp(i g v).
  Eigen::VectorXcd phases(double g) const;
  ComplexMatrix exp_i(double g) const { return phases(g).asDiagonal(); }
  /// Smallest minus second smallest distinct nonzero eigenvalue gap.
  int spectral_gap() const;
};

SizeOperator build_size_operator(int n_qubits, std::vector<int> sites);
/// Modes are 0-based positions in the combined [left | right] block.
SizeOperator build_size_operator(const RegisterLayout& layout, const std::vector<int>& block_modes);

struct InsertOperator {
  ComplexMatrix matrix;
  std::vector<PauliTerm> pauli_form;
  std::vector<std::pair<int, int>> swaps;  // circuit order
};

InsertOperator build_insert(const ProtocolConfig& cfg);

/// U = e^{-i H_R t} e^{i g v} e^{-i H_L t} I e^{+i H_L t} on the full register.
ComplexMatrix wormhole_unitary(const ComplexMatrix& h_left, const ComplexMatrix& h_right,
                               const InsertOperator& ins, const SizeOperator& size, double g,
                               double t);

/// Floquet form: e^{-iHt} -> U^k and e^{+iHt} -> U^{-k}.
ComplexMatrix wormhole_unitary_floquet(const ComplexMatrix& u_left, const ComplexMatrix& u_right,
                                       const InsertOperator& ins, const SizeOperator& size,
                                       double g, int steps);

// ---------------------------------------------------------------------------
// One disorder realization

class ChannelModel {
 public:
  explicit ChannelModel(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  int n_side() const { return spec_.n_side(); }
  ModelKind kind() const { return spec_.kind; }

  /// Side-local generator (SYK only).
  const ComplexMatrix& side_hamiltonian() const;
  const EigenSystem& side_eigensystem() const;
  const std::optional<SykCouplings>& couplings() const { return couplings_; }
  const std::optional<TfimParams>& tfim() const { return tfim_; }
  const ComplexMatrix& floquet() const { return floquet_; }

  /// e^{-iHt} (SYK) or U^k (TFIM, k = t).
  ComplexMatrix forward(double t) const;
  /// e^{+iHt} (SYK) or U^{-k} (TFIM).
  ComplexMatrix backward(double t) const;

  TfdState tfd(double beta, bool conjugate_right) const;

 private:
  ModelSpec spec_;
  std::optional<SykCouplings> couplings_;
  std::optional<TfimParams> tfim_;
  ComplexMatrix hamiltonian_;
  EigenSystem eigensystem_;
  ComplexMatrix floquet_;
};

int floquet_steps(double t);

// ---------------------------------------------------------------------------
// Protocol evaluation

struct MeanStderr {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Reduced blocks Tr_rest(|f_a><f_b|) on the readout qubit for the two basis
/// message inputs; enough to evaluate any single-qubit input by linearity.
struct ArbitraryBlocks {
  ComplexMatrix r[2][2];

  ComplexMatrix rho_out(Complex alpha, Complex beta) const;
  double fidelity(Complex alpha, Complex beta) const;
};

/// Haar-uniform single-qubit input number `index` of the stream `seed`:
/// azimuth = 2 pi u1, cos(polar) = 2 u2 - 1.
std::pair<Complex, Complex> haar_input(std::uint64_t seed, std::uint64_t index);

/// Applies the protocol for one configuration shape (variant, register,
/// size modes, readout) to a shared channel model. Cheap to copy; const
/// methods are safe to call concurrently.
class ProtocolEvaluator {
 public:
  ProtocolEvaluator(const ProtocolConfig& cfg, std::shared_ptr<const ChannelModel> model);
  explicit ProtocolEvaluator(const ProtocolConfig& cfg);

  const ProtocolConfig& config() const { return cfg_; }
  const RegisterLayout& layout() const { return layout_; }
  const ChannelModel& model() const { return *model_; }
  const SizeOperator& size() const { return size_; }

  /// message (x) |TFD(beta)>
  StateVector initial_state(const StateVector& message, double beta) const;
  /// e^{-i H_L t} I e^{+i H_L t} applied to `state`.
  StateVector insert(StateVector state, double t) const;
  /// e^{-i H_R t} e^{i g v} applied to `state`.
  StateVector traverse(StateVector state, double g, double t) const;
  StateVector final_state(const StateVector& message, double beta, double g, double t) const;

  double basis_z(const StateVector& final) const;
  double bell(const StateVector& final) const;
  ComplexMatrix readout_density(const StateVector& final) const;
  ArbitraryBlocks arbitrary_blocks(const StateVector& final0, const StateVector& final1) const;

 private:
  ProtocolConfig cfg_;
  RegisterLayout layout_;
  std::shared_ptr<const ChannelModel> model_;
  SizeOperator size_;
  std::vector<int> readout_;
};

/// <Z> on the readout qubit for message |0>, in [-1, 1].
double run_single_qubit(const ProtocolConfig& cfg);

/// <psi_in| rho_out |psi_in> with rho_out from the four-term expansion.
double run_single_qubit_arbitrary(const ProtocolConfig& cfg);

/// Mean and standard error over n_s Haar inputs drawn from `seed`.
MeanStderr run_arbitrary_avg(const ProtocolConfig& cfg, int n_s, std::uint64_t seed);

/// F = (1 + <XX> + <ZZ> + <YY>) / 2 for a two-qubit density matrix.
double stabilizer_fidelity(const ComplexMatrix& rho2);

double run_bell(const ProtocolConfig& cfg);

// ---------------------------------------------------------------------------
// Overlap diagnostics

struct OverlapTable {
  std::string variant;  // "(i,j)" Majorana pair or "bell"
  double beta = 0.0;
  ComplexMatrix values;
  std::optional<ComplexMatrix> alpha;  // <m| e^{-i H_R t} |n>, stored at (n, m)
};

/// C_nm = sum_k w_k <n|g_i|k>_L <m|g_j|k>_R with w_k = e^{-beta E_k} / Z.
OverlapTable overlap_coefficients(int majorana_left, int majorana_right, double beta,
                                  const EigenSystem& left, const EigenSystem& right,
                                  std::optional<double> t = std::nullopt);

/// Majorana pair probed by a single-qubit SWAP variant: D01 -> (1,1), D02 -> (2,2).
std::pair<int, int> majorana_pair(SwapVariant v);

/// C^Bell_nm = sum_k w_k <k|P_n^dag|k><k|P_m|k> over the 16 two-qubit Paulis on
/// side qubits {0, 1}; index n = 4 a + b for letters (a, b) in I, X, Y, Z order.
OverlapTable bell_overlap_coefficients(double beta, const EigenSystem& side);

/// <TFD_beta| g_i^L g_j^R |TFD_beta> evaluated in the energy eigenbasis.
Complex thermal_majorana_correlation(int i, int j, const EigenSystem& side, double beta,
                                     bool conjugate_right = true);

}  // namespace witp

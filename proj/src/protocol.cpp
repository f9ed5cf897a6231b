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

#include "witp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "witp/random.hpp"

namespace witp {
namespace {

bool is_single(SwapVariant v) { return v != SwapVariant::BellSequential; }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

StateVector Message::vector() const {
  switch (kind) {
    case MessageKind::BasisZero: {
      StateVector v(2);
      v << 1.0, 0.0;
      return v;
    }
    case MessageKind::Arbitrary: {
      StateVector v(2);
      v << alpha, beta;
      return v;
    }
    case MessageKind::BellPhiPlus: {
      StateVector v = StateVector::Zero(4);
      v(0) = v(3) = 1.0 / std::numbers::sqrt2;
      return v;
    }
  }
  return {};
}

std::string to_string(SwapVariant v) {
  switch (v) {
    case SwapVariant::D01: return "d01";
    case SwapVariant::D02: return "d02";
    case SwapVariant::BellSequential: return "bell";
  }
  return "?";
}

std::string to_string(MessageKind k) {
  switch (k) {
    case MessageKind::BasisZero: return "basis_zero";
    case MessageKind::Arbitrary: return "arbitrary";
    case MessageKind::BellPhiPlus: return "bell_phi_plus";
  }
  return "?";
}

std::string to_string(ModelKind k) { return k == ModelKind::Syk ? "syk" : "tfim"; }

RegisterLayout ProtocolConfig::layout() const {
  return {is_single(swap_variant) ? 1 : 2, model.n_side()};
}

std::vector<int> ProtocolConfig::effective_size_modes() const {
  if (!size_modes.empty()) return size_modes;
  std::vector<int> modes;
  for (int m = 1; m < 2 * model.n_side(); ++m) modes.push_back(m);
  return modes;
}

std::vector<int> ProtocolConfig::effective_readout_sites() const {
  if (!readout_sites.empty()) return readout_sites;
  const RegisterLayout l = layout();
  if (is_single(swap_variant)) return {l.right_site(l.n_side - 1)};
  return {l.right_site(l.n_side - 2), l.right_site(l.n_side - 1)};
}

std::vector<std::pair<int, int>> ProtocolConfig::swap_pairs() const {
  switch (swap_variant) {
    case SwapVariant::D01: return {{0, 1}};
    case SwapVariant::D02: return {{0, 2}};
    case SwapVariant::BellSequential: return {{0, 2}, {1, 3}};
  }
  return {};
}

void ProtocolConfig::validate() const {
  if (model.n_majorana < 4 || model.n_majorana % 2 != 0)
    throw ValidationError("n_majorana must be even and >= 4");
  require_finite(g, "g");
  require_finite(t, "t");
  require_finite(beta, "beta");
  if (beta < 0.0) throw ValidationError("beta must be >= 0");

  const bool bell_msg = message.kind == MessageKind::BellPhiPlus;
  const bool bell_var = swap_variant == SwapVariant::BellSequential;
  if (bell_msg != bell_var)
    throw ValidationError("variant: '" + to_string(swap_variant) + "' is incompatible with message '" +
                          to_string(message.kind) + "'");
  if (message.kind == MessageKind::Arbitrary) {
    const double norm = std::norm(message.alpha) + std::norm(message.beta);
    if (std::abs(norm - 1.0) > 1e-10) throw ValidationError("message: |alpha|^2 + |beta|^2 must be 1");
  }

  const RegisterLayout l = layout();
  for (const auto& [a, b] : swap_pairs()) {
    if (a >= l.n_message || !l.in_left(b))
      throw ValidationError("variant: swap (" + std::to_string(a) + "," + std::to_string(b) +
                            ") does not target the left block");
  }

  const auto modes = effective_size_modes();
  std::set<int> seen;
  for (int m : modes) {
    if (m < 0 || m >= 2 * l.n_side)
      throw ValidationError("size_modes: mode " + std::to_string(m) + " outside the left/right block");
    if (!seen.insert(m).second) throw ValidationError("size_modes: duplicate mode " + std::to_string(m));
  }

  const auto readout = effective_readout_sites();
  const std::size_t want = is_single(swap_variant) ? 1 : 2;
  if (readout.size() != want)
    throw ValidationError("readout_sites: expected " + std::to_string(want) + " site(s)");
  for (std::size_t i = 0; i < readout.size(); ++i) {
    if (!l.in_right(readout[i]))
      throw ValidationError("readout_sites: site " + std::to_string(readout[i]) + " is not in the right block");
    if (i > 0 && readout[i] <= readout[i - 1])
      throw ValidationError("readout_sites: sites must be strictly increasing");
  }

  if (model.kind == ModelKind::Tfim) {
    if (beta != 0.0) throw ValidationError("beta: the TFIM model supports beta = 0 only");
    floquet_steps(t);
  }
}

// ---------------------------------------------------------------------------

ComplexMatrix SizeOperator::matrix() const {
  return eigenvalues.cast<double>().cast<Complex>().asDiagonal();
}

Eigen::VectorXcd SizeOperator::phases(double g) const {
  // exp(i g n) for integer n; the table keeps e^{i(g+2pi)n} == e^{ign} bit-for-bit
  // up to the rounding of g itself.
  const int top = static_cast<int>(sites.size());
  std::vector<Complex> table(top + 1);
  for (int n = 0; n <= top; ++n) table[n] = std::exp(Complex(0.0, g * n));
  Eigen::VectorXcd d(eigenvalues.size());
  for (Eigen::Index s = 0; s < eigenvalues.size(); ++s) d(s) = table[eigenvalues(s)];
  return d;
}

int SizeOperator::spectral_gap() const {
  std::set<int> distinct;
  for (Eigen::Index s = 0; s < eigenvalues.size(); ++s)
    if (eigenvalues(s) != 0) distinct.insert(eigenvalues(s));
  if (distinct.size() < 2) return 0;
  auto it = distinct.begin();
  const int s1 = *it++;
  return *it - s1;
}

SizeOperator build_size_operator(int n_qubits, std::vector<int> sites) {
  if (sites.empty()) throw ValidationError("build_size_operator: empty mode set");
  std::sort(sites.begin(), sites.end());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 0 || sites[i] >= n_qubits)
      throw ValidationError("build_size_operator: mode site outside register");
    if (i > 0 && sites[i] == sites[i - 1]) throw ValidationError("build_size_operator: duplicate mode");
  }
  SizeOperator op{n_qubits, sites, Eigen::VectorXi(qubit_dim(n_qubits))};
  for (Eigen::Index s = 0; s < op.eigenvalues.size(); ++s) {
    int count = 0;
    for (int site : sites) count += static_cast<int>((s >> (n_qubits - 1 - site)) & 1);
    op.eigenvalues(s) = count;
  }
  return op;
}

SizeOperator build_size_operator(const RegisterLayout& layout, const std::vector<int>& block_modes) {
  std::vector<int> sites;
  for (int m : block_modes) {
    if (m < 0 || m >= 2 * layout.n_side)
      throw ValidationError("build_size_operator: mode outside the left/right block");
    sites.push_back(layout.left_first() + m);
  }
  return build_size_operator(layout.total(), std::move(sites));
}

InsertOperator build_insert(const ProtocolConfig& cfg) {
  const RegisterLayout l = cfg.layout();
  const int n = l.total();
  InsertOperator ins;
  ins.swaps = cfg.swap_pairs();
  std::set<int> used;
  for (const auto& [a, b] : ins.swaps) {
    if (a == b || !used.insert(a).second || !used.insert(b).second)
      throw ValidationError("build_insert: swap sites collide");
    if (b >= n) throw ValidationError("build_insert: swap site outside register");
  }

  ins.matrix = ComplexMatrix::Identity(qubit_dim(n), qubit_dim(n));
  for (const auto& [a, b] : ins.swaps) ins.matrix = swap_matrix(n, a, b) * ins.matrix;

  // Disjoint swaps: the Pauli form is the product of the per-swap forms.
  ins.pauli_form = {{PauliString{std::vector<Pauli>(n, Pauli::I)}, Complex(1.0)}};
  for (const auto& [a, b] : ins.swaps) {
    const auto terms = swap_pauli_decomposition(n, a, b);
    std::vector<PauliTerm> next;
    for (const auto& lhs : ins.pauli_form) {
      for (const auto& rhs : terms) {
        if (std::abs(rhs.coefficient) < 1e-15) continue;
        PauliTerm term = lhs;
        term.string.letters[a] = rhs.string.letters[a];
        term.string.letters[b] = rhs.string.letters[b];
        term.coefficient *= rhs.coefficient;
        next.push_back(std::move(term));
      }
    }
    ins.pauli_form = std::move(next);
  }
  return ins;
}

namespace {

void check_register(const ComplexMatrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim)
    throw ValidationError(std::string("wormhole_unitary: ") + what + " has the wrong dimension");
}

}  // namespace

ComplexMatrix wormhole_unitary(const ComplexMatrix& h_left, const ComplexMatrix& h_right,
                               const InsertOperator& ins, const SizeOperator& size, double g,
                               double t) {
  const Eigen::Index dim = ins.matrix.rows();
  check_register(h_left, dim, "H_L");
  check_register(h_right, dim, "H_R");
  if (size.eigenvalues.size() != dim) throw ValidationError("wormhole_unitary: SIZE operator has the wrong dimension");
  const EigenSystem left = hermitian_eig(h_left);
  const EigenSystem right = hermitian_eig(h_right);
  return evolve(right, t, -1) * size.exp_i(g) * evolve(left, t, -1) * ins.matrix * evolve(left, t, +1);
}

ComplexMatrix wormhole_unitary_floquet(const ComplexMatrix& u_left, const ComplexMatrix& u_right,
                                       const InsertOperator& ins, const SizeOperator& size,
                                       double g, int steps) {
  const Eigen::Index dim = ins.matrix.rows();
  check_register(u_left, dim, "U_L");
  check_register(u_right, dim, "U_R");
  if (size.eigenvalues.size() != dim) throw ValidationError("wormhole_unitary: SIZE operator has the wrong dimension");
  if (steps < 0) throw ValidationError("wormhole_unitary_floquet: steps must be >= 0");
  ComplexMatrix fl = ComplexMatrix::Identity(dim, dim), fr = fl;
  for (int k = 0; k < steps; ++k) {
    fl = u_left * fl;
    fr = u_right * fr;
  }
  return fr * size.exp_i(g) * fl * ins.matrix * fl.adjoint();
}

// ---------------------------------------------------------------------------

int floquet_steps(double t) {
  const double k = std::round(t);
  if (!std::isfinite(t) || t < 0.0 || std::abs(t - k) > 1e-9)
    throw ValidationError("t: the TFIM model needs a non-negative integer step count");
  return static_cast<int>(k);
}

ChannelModel::ChannelModel(const ModelSpec& spec) : spec_(spec) {
  if (spec.kind == ModelKind::Syk) {
    couplings_ = sample_syk_couplings(spec.n_majorana, 4, spec.j_scale, spec.seed);
    hamiltonian_ = syk_side_hamiltonian(*couplings_);
    eigensystem_ = hermitian_eig(hamiltonian_);
  } else {
    tfim_ = make_tfim_params(spec.n_side(), spec.seed, spec.tfim_h_width, spec.tfim_periodic);
    floquet_ = build_tfim_floquet(*tfim_);
    // Infinite-temperature TFD only: any orthonormal basis gives the same state.
    const Eigen::Index dim = qubit_dim(spec.n_side());
    eigensystem_ = {RealVector::Zero(dim), ComplexMatrix::Identity(dim, dim)};
  }
}

const ComplexMatrix& ChannelModel::side_hamiltonian() const {
  if (spec_.kind != ModelKind::Syk) throw ValidationError("side_hamiltonian: TFIM has no static generator");
  return hamiltonian_;
}

const EigenSystem& ChannelModel::side_eigensystem() const { return eigensystem_; }

ComplexMatrix ChannelModel::forward(double t) const {
  if (spec_.kind == ModelKind::Syk) return evolve(eigensystem_, t, -1);
  const int k = floquet_steps(t);
  ComplexMatrix u = ComplexMatrix::Identity(floquet_.rows(), floquet_.cols());
  for (int i = 0; i < k; ++i) u = floquet_ * u;
  return u;
}

ComplexMatrix ChannelModel::backward(double t) const {
  if (spec_.kind == ModelKind::Syk) return evolve(eigensystem_, t, +1);
  return forward(t).adjoint();
}

TfdState ChannelModel::tfd(double beta, bool conjugate_right) const {
  if (spec_.kind == ModelKind::Tfim && beta != 0.0)
    throw ValidationError("beta: the TFIM model supports beta = 0 only");
  return build_tfd(eigensystem_, beta, conjugate_right);
}

// ---------------------------------------------------------------------------

ComplexMatrix ArbitraryBlocks::rho_out(Complex alpha, Complex beta) const {
  return std::norm(alpha) * r[0][0] + std::norm(beta) * r[1][1] + alpha * std::conj(beta) * r[0][1] +
         std::conj(alpha) * beta * r[1][0];
}

double ArbitraryBlocks::fidelity(Complex alpha, Complex beta) const {
  Eigen::Vector2cd psi(alpha, beta);
  return psi.dot(rho_out(alpha, beta) * psi).real();
}

std::pair<Complex, Complex> haar_input(std::uint64_t seed, std::uint64_t index) {
  RandomStream rng(derive_seed(seed, "haar-input", index));
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double half = 0.5 * std::acos(std::clamp(cos_theta, -1.0, 1.0));
  return {Complex(std::cos(half), 0.0), std::polar(std::sin(half), phi)};
}

ProtocolEvaluator::ProtocolEvaluator(const ProtocolConfig& cfg, std::shared_ptr<const ChannelModel> model)
    : cfg_(cfg), layout_(cfg.layout()), model_(std::move(model)) {
  if (!model_) throw ValidationError("ProtocolEvaluator: missing channel model");
  if (model_->n_side() != layout_.n_side) throw ValidationError("ProtocolEvaluator: model/register mismatch");
  size_ = build_size_operator(layout_, cfg_.effective_size_modes());
  readout_ = cfg_.effective_readout_sites();
}

ProtocolEvaluator::ProtocolEvaluator(const ProtocolConfig& cfg)
    : ProtocolEvaluator(cfg, std::make_shared<const ChannelModel>(cfg.model)) {}

StateVector ProtocolEvaluator::initial_state(const StateVector& message, double beta) const {
  if (message.size() != qubit_dim(layout_.n_message))
    throw ValidationError("initial_state: message does not match the message register");
  return kron(message, model_->tfd(beta, cfg_.conjugate_right).state);
}

StateVector ProtocolEvaluator::insert(StateVector state, double t) const {
  const int n = layout_.total();
  apply_block(state, n, layout_.left_first(), model_->backward(t));
  for (const auto& [a, b] : cfg_.swap_pairs()) apply_swap(state, n, a, b);
  apply_block(state, n, layout_.left_first(), model_->forward(t));
  return state;
}

StateVector ProtocolEvaluator::traverse(StateVector state, double g, double t) const {
  apply_diagonal(state, size_.phases(g));
  apply_block(state, layout_.total(), layout_.right_first(), model_->forward(t));
  return state;
}

StateVector ProtocolEvaluator::final_state(const StateVector& message, double beta, double g, double t) const {
  return traverse(insert(initial_state(message, beta), t), g, t);
}

double ProtocolEvaluator::basis_z(const StateVector& final) const {
  return z_expectation(final, layout_.total(), readout_.front());
}

ComplexMatrix ProtocolEvaluator::readout_density(const StateVector& final) const {
  return reduced_density(final, layout_.total(), readout_);
}

double ProtocolEvaluator::bell(const StateVector& final) const {
  return stabilizer_fidelity(readout_density(final));
}

ArbitraryBlocks ProtocolEvaluator::arbitrary_blocks(const StateVector& final0, const StateVector& final1) const {
  const int n = layout_.total();
  const int site = readout_.front();
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - site);
  const Eigen::Index rest = final0.size() / 2;
  // Rows: readout bit; columns: the remaining qubits in index order.
  auto split = [&](const StateVector& f) {
    ComplexMatrix m(2, rest);
    Eigen::Index col0 = 0, col1 = 0;
    for (Eigen::Index s = 0; s < f.size(); ++s) {
      if (s & mask)
        m(1, col1++) = f(s);
      else
        m(0, col0++) = f(s);
    }
    return m;
  };
  const ComplexMatrix m0 = split(final0), m1 = split(final1);
  ArbitraryBlocks blocks;
  blocks.r[0][0] = m0 * m0.adjoint();
  blocks.r[0][1] = m0 * m1.adjoint();
  blocks.r[1][0] = m1 * m0.adjoint();
  blocks.r[1][1] = m1 * m1.adjoint();
  return blocks;
}

double run_single_qubit(const ProtocolConfig& cfg) {
  cfg.validate();
  if (cfg.message.kind != MessageKind::BasisZero)
    throw ValidationError("message: run_single_qubit needs basis_zero");
  const ProtocolEvaluator ev(cfg);
  return ev.basis_z(ev.final_state(cfg.message.vector(), cfg.beta, cfg.g, cfg.t));
}

double run_single_qubit_arbitrary(const ProtocolConfig& cfg) {
  cfg.validate();
  if (cfg.message.kind != MessageKind::Arbitrary)
    throw ValidationError("message: run_single_qubit_arbitrary needs an arbitrary message");
  const ProtocolEvaluator ev(cfg);
  const auto f0 = ev.final_state(Message::basis_zero().vector(), cfg.beta, cfg.g, cfg.t);
  const auto f1 = ev.final_state(Message::arbitrary(0.0, 1.0).vector(), cfg.beta, cfg.g, cfg.t);
  return ev.arbitrary_blocks(f0, f1).fidelity(cfg.message.alpha, cfg.message.beta);
}

MeanStderr run_arbitrary_avg(const ProtocolConfig& cfg, int n_s, std::uint64_t seed) {
  if (n_s < 1) throw ValidationError("n_s must be >= 1");
  ProtocolConfig base = cfg;
  base.message = Message::arbitrary(1.0, 0.0);
  base.validate();
  const ProtocolEvaluator ev(base);
  const auto f0 = ev.final_state(Message::basis_zero().vector(), cfg.beta, cfg.g, cfg.t);
  const auto f1 = ev.final_state(Message::arbitrary(0.0, 1.0).vector(), cfg.beta, cfg.g, cfg.t);
  const ArbitraryBlocks blocks = ev.arbitrary_blocks(f0, f1);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n_s; ++i) {
    const auto [a, b] = haar_input(seed, static_cast<std::uint64_t>(i));
    const double f = blocks.fidelity(a, b);
    sum += f;
    sum_sq += f * f;
  }
  MeanStderr out;
  out.mean = sum / n_s;
  if (n_s > 1) {
    const double var = std::max(0.0, (sum_sq - n_s * out.mean * out.mean) / (n_s - 1));
    out.standard_error = std::sqrt(var / n_s);
  }
  return out;
}

double stabilizer_fidelity(const ComplexMatrix& rho2) {
  if (rho2.rows() != 4 || rho2.cols() != 4) throw ValidationError("stabilizer_fidelity: need a 4x4 matrix");
  if (hermiticity_error(rho2) > 1e-10) throw ValidationError("stabilizer_fidelity: matrix is not Hermitian");
  if (std::abs(rho2.trace() - Complex(1.0)) > 1e-10) throw ValidationError("stabilizer_fidelity: trace is not 1");
  static const ComplexMatrix xx = kron(pauli_matrix(Pauli::X), pauli_matrix(Pauli::X));
  static const ComplexMatrix yy = kron(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y));
  static const ComplexMatrix zz = kron(pauli_matrix(Pauli::Z), pauli_matrix(Pauli::Z));
  const double sxx = (rho2 * xx).trace().real();
  const double szz = (rho2 * zz).trace().real();
  const double syy = (rho2 * yy).trace().real();
  return 0.5 * (1.0 + sxx + szz + syy);
}

double run_bell(const ProtocolConfig& cfg) {
  cfg.validate();
  if (cfg.message.kind != MessageKind::BellPhiPlus) throw ValidationError("message: run_bell needs bell_phi_plus");
  const ProtocolEvaluator ev(cfg);
  return ev.bell(ev.final_state(cfg.message.vector(), cfg.beta, cfg.g, cfg.t));
}

// ---------------------------------------------------------------------------

OverlapTable overlap_coefficients(int majorana_left, int majorana_right, double beta,
                                  const EigenSystem& left, const EigenSystem& right,
                                  std::optional<double> t) {
  if (left.dim() != right.dim()) throw ValidationError("overlap_coefficients: eigensystems differ in size");
  int modes = 0;
  while (qubit_dim(modes) < left.dim()) ++modes;
  const ComplexMatrix gl = left.eigenvectors.adjoint() * majorana(modes, majorana_left) * left.eigenvectors;
  const ComplexMatrix gr = right.eigenvectors.adjoint() * majorana(modes, majorana_right) * right.eigenvectors;
  const RealVector w = boltzmann_weights(left.eigenvalues, beta);

  OverlapTable table;
  table.variant = "(" + std::to_string(majorana_left) + "," + std::to_string(majorana_right) + ")";
  table.beta = beta;
  table.values = gl * w.cast<Complex>().asDiagonal() * gr.transpose();
  if (t) {
    const ComplexMatrix u = right.eigenvectors.adjoint() * evolve(right, *t, -1) * right.eigenvectors;
    table.alpha = u.transpose();  // alpha(n, m) = <m|U|n>
  }
  return table;
}

std::pair<int, int> majorana_pair(SwapVariant v) {
  switch (v) {
    case SwapVariant::D01: return {1, 1};
    case SwapVariant::D02: return {2, 2};
    case SwapVariant::BellSequential: break;
  }
  throw ValidationError("majorana_pair: only single-qubit variants probe one Majorana pair");
}

OverlapTable bell_overlap_coefficients(double beta, const EigenSystem& side) {
  int modes = 0;
  while (qubit_dim(modes) < side.dim()) ++modes;
  if (modes < 2) throw ValidationError("bell_overlap_coefficients: side needs at least 2 qubits");
  constexpr Pauli kAll[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  const RealVector w = boltzmann_weights(side.eigenvalues, beta);

  // diag(n, k) = <k|P_n|k>
  ComplexMatrix diag(16, side.dim());
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      PauliString s{std::vector<Pauli>(modes, Pauli::I)};
      s.letters[0] = kAll[a];
      s.letters[1] = kAll[b];
      const ComplexMatrix p = side.eigenvectors.adjoint() * s.matrix() * side.eigenvectors;
      diag.row(4 * a + b) = p.diagonal().transpose();
    }
  }
  OverlapTable table;
  table.variant = "bell";
  table.beta = beta;
  table.values = diag.conjugate() * w.cast<Complex>().asDiagonal() * diag.transpose();
  return table;
}

Complex thermal_majorana_correlation(int i, int j, const EigenSystem& side, double beta, bool conjugate_right) {
  int modes = 0;
  while (qubit_dim(modes) < side.dim()) ++modes;
  const ComplexMatrix& v = side.eigenvectors;
  const ComplexMatrix w = conjugate_right ? ComplexMatrix(v.conjugate()) : v;
  const Eigen::VectorXcd s = boltzmann_weights(side.eigenvalues, beta).cwiseSqrt().cast<Complex>();
  const ComplexMatrix ga = v.adjoint() * majorana(modes, i) * v;
  const ComplexMatrix gb = w.adjoint() * majorana(modes, j) * w;
  // <TFD| A (x) B |TFD> = Tr(S Ga S Gb^T) with S = diag(sqrt(p)).
  return (s.asDiagonal() * ga * s.asDiagonal() * gb.transpose()).trace();
}

}  // namespace witp

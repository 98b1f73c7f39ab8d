#include "sesq/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sesq {

namespace {

// Amplitudes whose squared magnitude falls below this are rounding residue
// from gate sequences that cancel exactly in exact arithmetic.
constexpr double kPruneNormSquared = 1e-30;

BasisIndex width_mask(int width) {
  return width == 64 ? ~BasisIndex{0} : (BasisIndex{1} << width) - 1;
}

void check_qubit(int q, int width) {
  if (q < 0 || q >= width) throw std::out_of_range("qubit index out of range");
}

}  // namespace

SparseState::SparseState(int num_qubits) : SparseState(basis_state(num_qubits, 0)) {}

SparseState SparseState::basis_state(int num_qubits, BasisIndex index) {
  if (num_qubits < 1 || num_qubits > 64) throw std::invalid_argument("register width must be in [1, 64]");
  if ((index & ~width_mask(num_qubits)) != 0) throw std::out_of_range("basis index exceeds register");
  SparseState s(num_qubits, EmptyTag{});
  s.amplitudes_[index] = 1.0;
  return s;
}

SparseState SparseState::from_terms(int num_qubits, std::span<const std::pair<BasisIndex, Complex>> terms,
                                    double tolerance) {
  SparseState s = basis_state(num_qubits, 0);
  s.amplitudes_.clear();
  for (const auto& [b, a] : terms) {
    if ((b & ~width_mask(num_qubits)) != 0) throw std::out_of_range("basis index exceeds register");
    s.amplitudes_[b] += a;
  }
  s.prune();
  if (std::abs(s.norm() - 1.0) > tolerance) throw std::invalid_argument("sparse state is not normalized");
  return s;
}

SparseState SparseState::from_dense(const StateVector& dense) {
  SparseState s = basis_state(dense.num_qubits(), 0);
  s.amplitudes_.clear();
  const auto amps = dense.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (std::norm(amps[i]) >= kPruneNormSquared) s.amplitudes_[static_cast<BasisIndex>(i)] = amps[i];
  return s;
}

Complex SparseState::amplitude(BasisIndex index) const {
  const auto it = amplitudes_.find(index);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

double SparseState::norm() const {
  // Sum in basis order so the result does not depend on hash iteration order.
  std::vector<std::pair<BasisIndex, Complex>> sorted(amplitudes_.begin(), amplitudes_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double s = 0.0;
  for (const auto& [b, a] : sorted) s += std::norm(a);
  return std::sqrt(s);
}

void SparseState::prune() {
  std::erase_if(amplitudes_, [](const auto& kv) { return std::norm(kv.second) < kPruneNormSquared; });
}

void SparseState::apply_1q(int target, const Matrix2& m) {
  check_qubit(target, num_qubits_);
  const BasisIndex bit = BasisIndex{1} << target;
  Map next;
  next.reserve(amplitudes_.size() * 2);
  std::unordered_set<BasisIndex> done;
  for (const auto& [b, a] : amplitudes_) {
    const BasisIndex b0 = b & ~bit;
    if (!done.insert(b0).second) continue;
    const Complex a0 = amplitude(b0);
    const Complex a1 = amplitude(b0 | bit);
    next[b0] = m[0] * a0 + m[1] * a1;
    next[b0 | bit] = m[2] * a0 + m[3] * a1;
  }
  amplitudes_ = std::move(next);
  prune();
}

void SparseState::apply_2q(int q0, int q1, const Matrix4& m) {
  const std::array<int, 2> qs{q0, q1};
  apply_kq(qs, m);
}

void SparseState::apply_kq(std::span<const int> qubits, std::span<const Complex> matrix) {
  BasisIndex mask = 0;
  for (int q : qubits) {
    check_qubit(q, num_qubits_);
    mask |= BasisIndex{1} << q;
  }
  const std::size_t dim = std::size_t{1} << qubits.size();
  if (matrix.size() != dim * dim) throw std::invalid_argument("matrix size does not match qubit count");
  std::vector<BasisIndex> offsets(dim, 0);
  for (std::size_t l = 0; l < dim; ++l)
    for (std::size_t t = 0; t < qubits.size(); ++t)
      if (l >> t & 1) offsets[l] |= BasisIndex{1} << qubits[t];
  Map next;
  next.reserve(amplitudes_.size() * 2);
  std::unordered_set<BasisIndex> done;
  std::vector<Complex> in(dim);
  for (const auto& [b, a] : amplitudes_) {
    const BasisIndex base = b & ~mask;
    if (!done.insert(base).second) continue;
    for (std::size_t c = 0; c < dim; ++c) in[c] = amplitude(base | offsets[c]);
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < dim; ++c) acc += matrix[r * dim + c] * in[c];
      next[base | offsets[r]] = acc;
    }
  }
  amplitudes_ = std::move(next);
  prune();
}

void SparseState::apply_mcx(BasisIndex control_mask, int target) {
  check_qubit(target, num_qubits_);
  const BasisIndex bit = BasisIndex{1} << target;
  Map next;
  next.reserve(amplitudes_.size());
  for (const auto& [b, a] : amplitudes_) next[(b & control_mask) == control_mask ? b ^ bit : b] = a;
  amplitudes_ = std::move(next);
}

void SparseState::apply_swap(int q0, int q1) {
  check_qubit(q0, num_qubits_);
  check_qubit(q1, num_qubits_);
  const BasisIndex m0 = BasisIndex{1} << q0;
  const BasisIndex m1 = BasisIndex{1} << q1;
  Map next;
  next.reserve(amplitudes_.size());
  for (const auto& [b, a] : amplitudes_) {
    const bool v0 = (b & m0) != 0;
    const bool v1 = (b & m1) != 0;
    next[v0 == v1 ? b : b ^ m0 ^ m1] = a;
  }
  amplitudes_ = std::move(next);
}

StateVector SparseState::to_dense() const {
  if (num_qubits_ > kMaxDenseQubits) throw std::invalid_argument("register too wide for dense storage");
  std::vector<Complex> amps(std::size_t{1} << num_qubits_);
  for (const auto& [b, a] : amplitudes_) amps[b] = a;
  return StateVector::from_amplitudes(std::move(amps), 1e-8);
}

Complex expectation(const SparseState& state, const PauliMasks& p) {
  std::vector<std::pair<BasisIndex, Complex>> sorted(state.terms().begin(), state.terms().end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Complex s{};
  for (const auto& [b, ket] : sorted) {
    if ((b & p.project_mask) != p.project_value) continue;
    const Complex bra = state.amplitude(b ^ p.flip_mask);
    if (bra == Complex{}) continue;
    s += std::conj(bra) * kernels::pauli_phase(b, p) * ket;
  }
  return s;
}

double expectation_pauli(const SparseState& state, const PauliString& p) {
  if (p.width() != state.num_qubits()) throw std::invalid_argument("Pauli string width does not match the register");
  if (!p.is_hermitian()) throw std::invalid_argument("Pauli string coefficient must be real");
  const Complex v = p.coefficient() * expectation(state, p.masks());
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(p.coefficient())))
    throw std::runtime_error("expectation value has an imaginary part of " + std::to_string(v.imag()));
  return v.real();
}

Complex overlap(const SparseState& a, const SparseState& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("overlap of states with different widths");
  std::vector<std::pair<BasisIndex, Complex>> sorted(b.terms().begin(), b.terms().end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Complex s{};
  for (const auto& [idx, amp] : sorted) s += std::conj(a.amplitude(idx)) * amp;
  return s;
}

StateVector restrict_to_register(const SparseState& state, int offset, int width, double leak_tolerance) {
  if (offset < 0 || width < 1 || offset + width > state.num_qubits())
    throw std::out_of_range("register slice outside the state");
  if (width > kMaxDenseQubits) throw std::invalid_argument("register too wide for dense storage");
  const BasisIndex slice = width_mask(width) << offset;
  std::vector<Complex> out(std::size_t{1} << width);
  double kept = 0.0;
  for (const auto& [b, a] : state.terms()) {
    if ((b & ~slice) != 0) continue;
    out[(b & slice) >> offset] = a;
  }
  for (const auto& a : out) kept += std::norm(a);
  const double leaked = std::max(0.0, 1.0 - kept);
  if (leaked > leak_tolerance)
    throw std::runtime_error("probability " + std::to_string(leaked) +
                             " outside the |0> sector of the remaining qubits");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : out) a *= scale;
  return StateVector::from_amplitudes(std::move(out));
}

}  // namespace sesq

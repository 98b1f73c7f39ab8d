#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "sesq/statevector.hpp"

namespace sesq {

/// Amplitude map over a register of up to 64 qubits. Used where the dense
/// vector would not fit, e.g. one-hot registers with dozens of sites whose
/// states keep a support of O(N) basis states.
class SparseState {
 public:
  using Map = std::unordered_map<BasisIndex, Complex>;

  /// |0...0>.
  explicit SparseState(int num_qubits);

  static SparseState basis_state(int num_qubits, BasisIndex index);
  /// Normalized state from explicit (basis, amplitude) pairs.
  static SparseState from_terms(int num_qubits, std::span<const std::pair<BasisIndex, Complex>> terms,
                                double tolerance = 1e-10);
  static SparseState from_dense(const StateVector& dense);

  int num_qubits() const { return num_qubits_; }
  std::size_t support_size() const { return amplitudes_.size(); }
  const Map& terms() const { return amplitudes_; }
  Complex amplitude(BasisIndex index) const;
  double norm() const;

  void apply_1q(int target, const Matrix2& m);
  void apply_2q(int q0, int q1, const Matrix4& m);
  void apply_kq(std::span<const int> qubits, std::span<const Complex> matrix);
  void apply_mcx(BasisIndex control_mask, int target);
  void apply_swap(int q0, int q1);

  StateVector to_dense() const;

 private:
  struct EmptyTag {};
  SparseState(int num_qubits, EmptyTag) : num_qubits_(num_qubits) {}
  void prune();

  int num_qubits_ = 0;
  Map amplitudes_;
};

Complex expectation(const SparseState& state, const PauliMasks& masks);
double expectation_pauli(const SparseState& state, const PauliString& p);
Complex overlap(const SparseState& a, const SparseState& b);

/// Dense state of qubits [offset, offset + width); see the dense overload.
StateVector restrict_to_register(const SparseState& state, int offset, int width,
                                 double leak_tolerance = 1e-10);

}  // namespace sesq

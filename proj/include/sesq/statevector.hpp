#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sesq/kernels.hpp"

namespace sesq {

/// Dense simulation budget. Wider registers must use SparseState.
inline constexpr int kMaxDenseQubits = 26;

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Tensor product of single-qubit Paulis times a scalar. Character q of the
/// string form is the operator on qubit q (qubit 0 first).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string_view ops, Complex coefficient = 1.0);
  PauliString(std::vector<Pauli> ops, Complex coefficient);

  static PauliString identity(int width);
  static PauliString single(int width, int qubit, Pauli p, Complex coefficient = 1.0);
  static PauliString pair(int width, int q0, Pauli p0, int q1, Pauli p1,
                          Complex coefficient = 1.0);

  int width() const { return static_cast<int>(ops_.size()); }
  Pauli op(int qubit) const { return ops_.at(static_cast<std::size_t>(qubit)); }
  Complex coefficient() const { return coefficient_; }
  bool is_hermitian() const { return coefficient_.imag() == 0.0; }
  PauliMasks masks() const;
  std::string str() const;

 private:
  std::vector<Pauli> ops_;
  Complex coefficient_{1.0, 0.0};
};

/// Normalized amplitudes over 2^q basis states, little-endian basis order.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits);

  static StateVector basis_state(int num_qubits, BasisIndex index);
  /// Takes ownership of `amplitudes`; the length must be a power of two and the
  /// norm must be 1 within `tolerance`.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes, double tolerance = 1e-10);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> mutable_amplitudes() { return amplitudes_; }
  Complex amplitude(BasisIndex index) const { return amplitudes_.at(index); }
  double norm() const;

 private:
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// <psi|P|psi> without the Hermiticity check; honours the projector fields.
Complex expectation(const StateVector& state, const PauliMasks& masks);

/// Real expectation of a Hermitian Pauli string, coefficient included.
/// Throws on width mismatch, complex coefficient, or a residual imaginary
/// part above 1e-12.
double expectation_pauli(const StateVector& state, const PauliString& p);

/// <a|b>. Throws on width mismatch.
Complex overlap(const StateVector& a, const StateVector& b);

/// Amplitudes of qubits [offset, offset + width) given that every other qubit
/// is |0>. Throws when the probability outside that sector exceeds
/// `leak_tolerance`; the result is renormalized.
StateVector restrict_to_register(const StateVector& state, int offset, int width,
                                 double leak_tolerance = 1e-10);

}  // namespace sesq

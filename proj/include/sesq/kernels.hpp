#pragma once

// Dense amplitude kernels. Every kernel exists twice: a plain serial loop kept
// as the reference implementation, and an OpenMP version used by StateVector.
// Both index amplitudes little-endian (qubit 0 is the least significant bit).

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <span>

namespace sesq {

using Complex = std::complex<double>;
using BasisIndex = std::uint64_t;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

/// Row-major 4x4 matrix. Local index is bit0 = first qubit, bit1 = second.
using Matrix4 = std::array<Complex, 16>;

/// Pauli string in bitmask form. `flip_mask` holds X and Y positions,
/// `phase_mask` holds Z and Y positions, `num_y` counts Y factors. An optional
/// projector restricts the ket to basis states with
/// (b & project_mask) == project_value; it must not overlap flip_mask.
struct PauliMasks {
  BasisIndex flip_mask = 0;
  BasisIndex phase_mask = 0;
  int num_y = 0;
  BasisIndex project_mask = 0;
  BasisIndex project_value = 0;
};

namespace kernels {

namespace serial {
void apply_1q(std::span<Complex> amps, int target, const Matrix2& m);
void apply_2q(std::span<Complex> amps, int q0, int q1, const Matrix4& m);
void apply_kq(std::span<Complex> amps, std::span<const int> qubits,
              std::span<const Complex> matrix);
/// Flips `target` on every basis state whose `control_mask` bits are all set.
void apply_mcx(std::span<Complex> amps, BasisIndex control_mask, int target);
void apply_swap(std::span<Complex> amps, int q0, int q1);
double norm_squared(std::span<const Complex> amps);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
Complex expectation(std::span<const Complex> amps, const PauliMasks& p);
void probabilities(std::span<const Complex> amps, std::span<double> out);
}  // namespace serial

namespace omp {
void apply_1q(std::span<Complex> amps, int target, const Matrix2& m);
void apply_2q(std::span<Complex> amps, int q0, int q1, const Matrix4& m);
void apply_kq(std::span<Complex> amps, std::span<const int> qubits,
              std::span<const Complex> matrix);
void apply_mcx(std::span<Complex> amps, BasisIndex control_mask, int target);
void apply_swap(std::span<Complex> amps, int q0, int q1);
double norm_squared(std::span<const Complex> amps);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
Complex expectation(std::span<const Complex> amps, const PauliMasks& p);
void probabilities(std::span<const Complex> amps, std::span<double> out);
}  // namespace omp

/// Phase picked up by P|b> = phase * |b ^ flip_mask>, ignoring the projector.
inline Complex pauli_phase(BasisIndex b, const PauliMasks& p) {
  static constexpr std::array<Complex, 4> kIPowers{
      Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
  Complex phase = kIPowers[static_cast<std::size_t>(p.num_y & 3)];
  if (std::popcount(b & p.phase_mask) & 1) phase = -phase;
  return phase;
}

}  // namespace kernels
}  // namespace sesq

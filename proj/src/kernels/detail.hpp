#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sesq/kernels.hpp"

namespace sesq::kernels::detail {

/// Spreads the bits of `i` over the positions not listed in `sorted_zero_bits`,
/// leaving those positions zero.
inline BasisIndex insert_zero_bits(BasisIndex i, std::span<const int> sorted_zero_bits) {
  for (int bit : sorted_zero_bits) {
    const BasisIndex low = i & ((BasisIndex{1} << bit) - 1);
    i = ((i >> bit) << (bit + 1)) | low;
  }
  return i;
}

inline BasisIndex insert_zero_bit(BasisIndex i, int bit) {
  const BasisIndex low = i & ((BasisIndex{1} << bit) - 1);
  return ((i >> bit) << (bit + 1)) | low;
}

inline void apply_1q_at(std::span<Complex> amps, BasisIndex i0, BasisIndex bit, const Matrix2& m) {
  const Complex a0 = amps[i0];
  const Complex a1 = amps[i0 | bit];
  amps[i0] = m[0] * a0 + m[1] * a1;
  amps[i0 | bit] = m[2] * a0 + m[3] * a1;
}

inline void apply_2q_at(std::span<Complex> amps, BasisIndex base, BasisIndex m0, BasisIndex m1,
                        const Matrix4& m) {
  const std::array<BasisIndex, 4> idx{base, base | m0, base | m1, base | m0 | m1};
  std::array<Complex, 4> in{};
  for (int c = 0; c < 4; ++c) in[c] = amps[idx[c]];
  for (int r = 0; r < 4; ++r) {
    Complex acc{};
    for (int c = 0; c < 4; ++c) acc += m[r * 4 + c] * in[c];
    amps[idx[r]] = acc;
  }
}

inline Complex expectation_term(std::span<const Complex> amps, BasisIndex b, const PauliMasks& p) {
  if ((b & p.project_mask) != p.project_value) return {};
  const Complex ket = amps[b];
  if (ket == Complex{}) return {};
  return std::conj(amps[b ^ p.flip_mask]) * pauli_phase(b, p) * ket;
}

/// Local sub-index layout for k-qubit gates: bit t of the local index maps to qubits[t].
inline std::vector<BasisIndex> local_offsets(std::span<const int> qubits) {
  const std::size_t dim = std::size_t{1} << qubits.size();
  std::vector<BasisIndex> offsets(dim, 0);
  for (std::size_t l = 0; l < dim; ++l)
    for (std::size_t t = 0; t < qubits.size(); ++t)
      if (l >> t & 1) offsets[l] |= BasisIndex{1} << qubits[t];
  return offsets;
}

inline std::vector<int> sorted_copy(std::span<const int> qubits) {
  std::vector<int> s(qubits.begin(), qubits.end());
  std::sort(s.begin(), s.end());
  return s;
}

// Reductions are split into a fixed number of blocks so that the summation
// order, and therefore the rounding, does not depend on the thread count.
inline constexpr std::size_t kReductionBlocks = 64;

}  // namespace sesq::kernels::detail

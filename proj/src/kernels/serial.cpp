#include <cmath>
#include <vector>

#include "detail.hpp"
#include "sesq/kernels.hpp"

namespace sesq::kernels::serial {

void apply_1q(std::span<Complex> amps, int target, const Matrix2& m) {
  const BasisIndex bit = BasisIndex{1} << target;
  const std::size_t half = amps.size() / 2;
  for (std::size_t i = 0; i < half; ++i)
    detail::apply_1q_at(amps, detail::insert_zero_bit(i, target), bit, m);
}

void apply_2q(std::span<Complex> amps, int q0, int q1, const Matrix4& m) {
  const std::array<int, 2> qs{std::min(q0, q1), std::max(q0, q1)};
  const BasisIndex m0 = BasisIndex{1} << q0;
  const BasisIndex m1 = BasisIndex{1} << q1;
  const std::size_t quarter = amps.size() / 4;
  for (std::size_t i = 0; i < quarter; ++i)
    detail::apply_2q_at(amps, detail::insert_zero_bits(i, qs), m0, m1, m);
}

void apply_kq(std::span<Complex> amps, std::span<const int> qubits,
              std::span<const Complex> matrix) {
  const auto sorted = detail::sorted_copy(qubits);
  const auto offsets = detail::local_offsets(qubits);
  const std::size_t dim = offsets.size();
  const std::size_t count = amps.size() / dim;
  std::vector<Complex> in(dim);
  for (std::size_t i = 0; i < count; ++i) {
    const BasisIndex base = detail::insert_zero_bits(i, sorted);
    for (std::size_t c = 0; c < dim; ++c) in[c] = amps[base | offsets[c]];
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < dim; ++c) acc += matrix[r * dim + c] * in[c];
      amps[base | offsets[r]] = acc;
    }
  }
}

void apply_mcx(std::span<Complex> amps, BasisIndex control_mask, int target) {
  const BasisIndex bit = BasisIndex{1} << target;
  const std::size_t half = amps.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const BasisIndex i0 = detail::insert_zero_bit(i, target);
    if ((i0 & control_mask) == control_mask) std::swap(amps[i0], amps[i0 | bit]);
  }
}

void apply_swap(std::span<Complex> amps, int q0, int q1) {
  const BasisIndex m0 = BasisIndex{1} << q0;
  const BasisIndex m1 = BasisIndex{1} << q1;
  for (BasisIndex b = 0; b < amps.size(); ++b)
    if ((b & m0) && !(b & m1)) std::swap(amps[b], amps[(b ^ m0) | m1]);
}

double norm_squared(std::span<const Complex> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
  Complex s{};
  for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

Complex expectation(std::span<const Complex> amps, const PauliMasks& p) {
  Complex s{};
  for (BasisIndex b = 0; b < amps.size(); ++b) s += detail::expectation_term(amps, b, p);
  return s;
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
  for (std::size_t i = 0; i < amps.size(); ++i) out[i] = std::norm(amps[i]);
}

}  // namespace sesq::kernels::serial

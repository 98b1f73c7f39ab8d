#include <omp.h>

#include <array>
#include <cmath>
#include <vector>

#include "detail.hpp"
#include "sesq/kernels.hpp"

namespace sesq::kernels::omp {

namespace {

// Below this many loop iterations the fork/join overhead dominates.
constexpr std::int64_t kParallelThreshold = 1 << 12;

template <typename Term>
auto blocked_sum(std::size_t n, Term term) {
  using Value = decltype(term(std::size_t{0}));
  std::array<Value, detail::kReductionBlocks> partial{};
  const std::size_t block = (n + detail::kReductionBlocks - 1) / detail::kReductionBlocks;
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(n) > kParallelThreshold)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(detail::kReductionBlocks); ++k) {
    const std::size_t lo = static_cast<std::size_t>(k) * block;
    const std::size_t hi = std::min(n, lo + block);
    Value acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(k)] = acc;
  }
  Value total{};
  for (const auto& v : partial) total += v;
  return total;
}

}  // namespace

void apply_1q(std::span<Complex> amps, int target, const Matrix2& m) {
  const BasisIndex bit = BasisIndex{1} << target;
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static) if (half > kParallelThreshold)
  for (std::int64_t i = 0; i < half; ++i)
    detail::apply_1q_at(amps, detail::insert_zero_bit(static_cast<BasisIndex>(i), target), bit, m);
}

void apply_2q(std::span<Complex> amps, int q0, int q1, const Matrix4& m) {
  const std::array<int, 2> qs{std::min(q0, q1), std::max(q0, q1)};
  const BasisIndex m0 = BasisIndex{1} << q0;
  const BasisIndex m1 = BasisIndex{1} << q1;
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
#pragma omp parallel for schedule(static) if (quarter > kParallelThreshold)
  for (std::int64_t i = 0; i < quarter; ++i)
    detail::apply_2q_at(amps, detail::insert_zero_bits(static_cast<BasisIndex>(i), qs), m0, m1, m);
}

void apply_kq(std::span<Complex> amps, std::span<const int> qubits,
              std::span<const Complex> matrix) {
  const auto sorted = detail::sorted_copy(qubits);
  const auto offsets = detail::local_offsets(qubits);
  const std::size_t dim = offsets.size();
  const auto count = static_cast<std::int64_t>(amps.size() / dim);
#pragma omp parallel if (count > kParallelThreshold)
  {
    std::vector<Complex> in(dim);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      const BasisIndex base = detail::insert_zero_bits(static_cast<BasisIndex>(i), sorted);
      for (std::size_t c = 0; c < dim; ++c) in[c] = amps[base | offsets[c]];
      for (std::size_t r = 0; r < dim; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < dim; ++c) acc += matrix[r * dim + c] * in[c];
        amps[base | offsets[r]] = acc;
      }
    }
  }
}

void apply_mcx(std::span<Complex> amps, BasisIndex control_mask, int target) {
  const BasisIndex bit = BasisIndex{1} << target;
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static) if (half > kParallelThreshold)
  for (std::int64_t i = 0; i < half; ++i) {
    const BasisIndex i0 = detail::insert_zero_bit(static_cast<BasisIndex>(i), target);
    if ((i0 & control_mask) == control_mask) std::swap(amps[i0], amps[i0 | bit]);
  }
}

void apply_swap(std::span<Complex> amps, int q0, int q1) {
  const std::array<int, 2> qs{std::min(q0, q1), std::max(q0, q1)};
  const BasisIndex m0 = BasisIndex{1} << q0;
  const BasisIndex m1 = BasisIndex{1} << q1;
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
#pragma omp parallel for schedule(static) if (quarter > kParallelThreshold)
  for (std::int64_t i = 0; i < quarter; ++i) {
    const BasisIndex base = detail::insert_zero_bits(static_cast<BasisIndex>(i), qs);
    std::swap(amps[base | m0], amps[base | m1]);
  }
}

double norm_squared(std::span<const Complex> amps) {
  return blocked_sum(amps.size(), [&](std::size_t i) { return std::norm(amps[i]); });
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
  return blocked_sum(bra.size(), [&](std::size_t i) { return std::conj(bra[i]) * ket[i]; });
}

Complex expectation(std::span<const Complex> amps, const PauliMasks& p) {
  return blocked_sum(amps.size(), [&](std::size_t i) {
    return detail::expectation_term(amps, static_cast<BasisIndex>(i), p);
  });
}

void probabilities(std::span<const Complex> amps, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) out[i] = std::norm(amps[i]);
}

}  // namespace sesq::kernels::omp

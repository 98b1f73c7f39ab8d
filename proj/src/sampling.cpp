#include "sesq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sesq {

namespace {

const Matrix2 kHadamard{Complex{std::numbers::sqrt2 / 2}, Complex{std::numbers::sqrt2 / 2},
                        Complex{std::numbers::sqrt2 / 2}, Complex{-std::numbers::sqrt2 / 2}};
// H * Sdg
const Matrix2 kYToZ{Complex{std::numbers::sqrt2 / 2}, Complex{0, -std::numbers::sqrt2 / 2},
                    Complex{std::numbers::sqrt2 / 2}, Complex{0, std::numbers::sqrt2 / 2}};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_bitstring(BasisIndex value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q)
    if (value >> q & 1) s[static_cast<std::size_t>(width - 1 - q)] = '1';
  return s;
}

BasisIndex parse_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) throw std::invalid_argument("bitstring length must be in [1, 64]");
  BasisIndex v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring may contain only 0 and 1");
    v = (v << 1) | static_cast<BasisIndex>(c == '1');
  }
  return v;
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

void rotate_to_basis(StateVector& state, std::span<const MeasureBasis> bases) {
  if (static_cast<int>(bases.size()) != state.num_qubits())
    throw std::invalid_argument("basis assignment does not match register width");
  for (int q = 0; q < state.num_qubits(); ++q) {
    switch (bases[static_cast<std::size_t>(q)]) {
      case MeasureBasis::Z: break;
      case MeasureBasis::X: kernels::omp::apply_1q(state.mutable_amplitudes(), q, kHadamard); break;
      case MeasureBasis::Y: kernels::omp::apply_1q(state.mutable_amplitudes(), q, kYToZ); break;
    }
  }
}

std::vector<double> basis_probabilities(const StateVector& state, std::span<const MeasureBasis> bases) {
  StateVector rotated = state;
  rotate_to_basis(rotated, bases);
  std::vector<double> p(rotated.dimension());
  kernels::omp::probabilities(rotated.amplitudes(), p);
  return p;
}

ShotHistogram sample_distribution(std::span<const double> probabilities, int num_qubits,
                                  std::uint64_t shots, std::uint64_t seed, std::string label) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  ShotHistogram h;
  h.setting_label = std::move(label);
  h.num_qubits = num_qubits;
  h.total_shots = shots;
  std::mt19937_64 rng(seed);
  // Sequential conditional binomials give an exact multinomial draw in
  // O(dimension) regardless of the shot count.
  double remaining_mass = 0.0;
  for (double p : probabilities) remaining_mass += p;
  std::uint64_t remaining = shots;
  for (std::size_t i = 0; i < probabilities.size() && remaining > 0; ++i) {
    const double p = probabilities[i];
    if (p <= 0.0) continue;
    std::uint64_t k = remaining;
    if (i + 1 < probabilities.size() && p < remaining_mass) {
      std::binomial_distribution<std::uint64_t> draw(remaining, std::clamp(p / remaining_mass, 0.0, 1.0));
      k = draw(rng);
    }
    remaining_mass -= p;
    if (k > 0) {
      h.counts[static_cast<BasisIndex>(i)] = k;
      remaining -= k;
    }
  }
  if (remaining > 0) {
    // Only reachable through rounding in remaining_mass; park leftovers on the
    // most likely outcome so the histogram still sums to `shots`.
    std::size_t best = 0;
    for (std::size_t i = 1; i < probabilities.size(); ++i)
      if (probabilities[i] > probabilities[best]) best = i;
    h.counts[static_cast<BasisIndex>(best)] += remaining;
  }
  return h;
}

ShotHistogram sample_bitstrings(const StateVector& state, std::span<const MeasureBasis> bases,
                                std::uint64_t shots, std::uint64_t seed, std::string label) {
  const auto p = basis_probabilities(state, bases);
  return sample_distribution(p, state.num_qubits(), shots, seed, std::move(label));
}

}  // namespace sesq

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sesq/statevector.hpp"

namespace sesq {

enum class MeasureBasis : char { Z = 'Z', X = 'X', Y = 'Y' };

/// Outcome counts of one measurement setting. Keys are little-endian basis
/// indices of the rotated register; bit value 0 reads as eigenvalue +1.
struct ShotHistogram {
  std::string setting_label;
  int num_qubits = 0;
  std::map<BasisIndex, std::uint64_t> counts;
  std::uint64_t total_shots = 0;
};

/// Big-endian rendering: leftmost character is qubit width-1.
std::string to_bitstring(BasisIndex value, int width);
/// Inverse of to_bitstring; throws on characters other than 0/1.
BasisIndex parse_bitstring(std::string_view bits);

/// Child seed for node `index` below `parent` in the seed tree.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Applies the per-qubit rotation that maps the eigenbasis of `bases[q]` onto
/// the computational basis: H for X, H*Sdg for Y, nothing for Z.
void rotate_to_basis(StateVector& state, std::span<const MeasureBasis> bases);

/// Exact outcome distribution after the basis rotation.
std::vector<double> basis_probabilities(const StateVector& state, std::span<const MeasureBasis> bases);

/// Draws `shots` outcomes from the rotated Born distribution. Deterministic in
/// (state, bases, shots, seed) for a given build.
ShotHistogram sample_bitstrings(const StateVector& state, std::span<const MeasureBasis> bases,
                                std::uint64_t shots, std::uint64_t seed, std::string label = {});

/// Multinomial draw from an explicit distribution; `probabilities` must sum to 1.
ShotHistogram sample_distribution(std::span<const double> probabilities, int num_qubits,
                                  std::uint64_t shots, std::uint64_t seed, std::string label = {});

}  // namespace sesq

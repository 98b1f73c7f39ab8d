#pragma once

#include <span>
#include <vector>

#include "sesq/circuit.hpp"
#include "sesq/encoding.hpp"

namespace sesq {

/// Parameters of the single-excitation ansatz families are stored flat as
/// [beta_0, gamma_0, beta_1, gamma_1, ...], one pair per A gate.
inline int ses_param_count(int n_sites) { return 2 * (n_sites - 1); }
inline int hardware_efficient_param_count(int n, int layers) { return 2 * n * layers; }

/// X on qubit 0, then A(beta_j, gamma_j) on (j, j+1) for j = 0..N-2. Width N.
Circuit build_ses_circuit(std::span<const double> params, int n_sites);

/// How each module moves the data register to the next codeword.
enum class PrepStrategy {
  /// Flip only the bits that differ between consecutive codewords, controlled
  /// by the carrier ancilla.
  Incremental,
  /// Write the full codeword from |0...0>, controlled by the flag ancilla.
  /// Needs the shifted map, whose codewords are non-zero before the last site.
  FromZero,
};

/// Qubit roles of the binary-encoded ansatz register.
struct BinaryLayout {
  int carrier = 0;
  int flag = 1;
  int data_offset = 2;
  int data_width = 0;
  /// Clean ancilla for the multi-controlled X, -1 when n < 3.
  int helper = -1;
  int width = 0;
};

BinaryLayout binary_layout(const EncodingMap& map);

/// Binary-encoded single-excitation ansatz. Module i applies A(beta_i, gamma_i)
/// on (carrier, flag), swaps them, moves the data register on, and unflags
/// the branch that now holds codeword(i); a terminal step hands the carrier
/// amplitude to the last codeword. All ancillas end in |0>.
Circuit build_binary_ses_circuit(std::span<const double> params, const EncodingMap& map,
                                 PrepStrategy prep = PrepStrategy::Incremental);

/// `layers` x [Ry on every qubit, Rz on every qubit, CNOT ring]. Params per
/// layer: n Ry angles then n Rz angles. The ring is the single CNOT 0->1 for
/// n = 2 and is empty for n = 1.
Circuit build_hardware_efficient_circuit(int n, int layers, std::span<const double> params);

/// Amplitudes of the one-hot states |e_0>..|e_{N-1}> of an N-qubit register.
std::vector<Complex> one_hot_amplitudes(const SparseState& state);
std::vector<Complex> one_hot_amplitudes(const StateVector& state);

/// Per-site amplitudes read from the data register of a binary ansatz state
/// (ancillas must be back in |0>).
std::vector<Complex> binary_site_amplitudes(const StateVector& state, const EncodingMap& map);

}  // namespace sesq

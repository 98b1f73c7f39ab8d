#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sesq/kernels.hpp"

namespace sesq {

enum class EncodingMode { Plain, Shifted };

/// n = max(1, ceil(log2 N)); a single site still needs one qubit.
int register_width(int n_sites);

/// Site <-> n-bit codeword table. Codewords are integers whose bit l is
/// data qubit l. Shifted: codeword(k) = (k + 1) mod 2^n. Plain: codeword(k) = k.
class EncodingMap {
 public:
  static EncodingMap build(int n_sites, EncodingMode mode = EncodingMode::Shifted);

  int num_sites() const { return n_sites_; }
  int num_qubits() const { return n_; }
  EncodingMode mode() const { return mode_; }
  BasisIndex codeword(int site) const { return table_.at(static_cast<std::size_t>(site)); }
  /// Site encoded by `codeword`, or nullopt for unused codewords.
  std::optional<int> site_of(BasisIndex codeword) const;
  /// Codewords without a preimage, ascending.
  std::vector<BasisIndex> unused_codewords() const;
  /// Big-endian rendering (leftmost character is qubit n-1).
  std::string codeword_string(int site) const;

 private:
  int n_sites_ = 0;
  int n_ = 0;
  EncodingMode mode_ = EncodingMode::Shifted;
  std::vector<BasisIndex> table_;
  std::vector<int> inverse_;
};

/// Reflected binary Gray order: entry i is i ^ (i >> 1).
std::vector<BasisIndex> gray_sequence(int n);

struct DiffSets {
  /// Positions where the codewords differ, ascending.
  std::vector<int> differ;
  /// Positions where they agree, with the shared bit value.
  std::vector<std::pair<int, int>> same;
};

DiffSets diff_sets(BasisIndex a, BasisIndex b, int width);

struct HypercubeEdge {
  int j = 0;
  int k = 0;
  int position = 0;
};

/// All unordered site pairs (j < k) whose codewords differ in exactly one bit.
std::vector<HypercubeEdge> hypercube_edges(const EncodingMap& map);

}  // namespace sesq

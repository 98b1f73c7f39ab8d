#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sesq/gate.hpp"

namespace sesq {

class Circuit {
 public:
  explicit Circuit(int width, std::string label = {});

  /// Validates the gate against the register width before storing it.
  void append(GateOp g);
  void append(const Circuit& other);

  int width() const { return width_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<GateOp>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool is_primitive() const;

 private:
  int width_ = 0;
  std::string label_;
  std::vector<GateOp> gates_;
};

struct DecomposeOptions {
  /// Also rewrite CCX into the six-CNOT Clifford+T network.
  bool expand_toffoli = false;
};

/// Rewrites composite gates into primitives:
///   SWAP  -> 3 CNOT
///   A     -> CNOT, Rz, Ry, reversed CNOT, Ry, Rz, CNOT
///   MCX   -> CNOT (k=1), CCX (k=2), or 2k-3 CCX around the helper (k>=3)
///   CPREP -> one CNOT per target
Circuit decompose(const Circuit& c, DecomposeOptions options = {});

struct GateCounts {
  int width = 0;
  int depth = 0;
  std::uint64_t cnot_count = 0;
  std::uint64_t toffoli_count = 0;
  std::uint64_t single_qubit_count = 0;
};

/// Counts on an already primitive circuit; throws std::invalid_argument on a
/// composite gate. A CCX counts as six CNOTs. Depth is the greedy layering in
/// which each gate lands in the earliest layer where all its qubits are free.
GateCounts gate_counts(const Circuit& c);

/// Counts after full decomposition (Toffolis expanded), so depth is measured
/// in one- and two-qubit layers.
GateCounts circuit_metadata(const Circuit& c);

void simulate(const Circuit& c, StateVector& state);
void simulate(const Circuit& c, SparseState& state);
/// Runs `c` on |0...0>.
StateVector run_dense(const Circuit& c);
SparseState run_sparse(const Circuit& c);

/// Line format: `WIDTH n`, optional `LABEL text`, then one
/// `GATE KIND q0,q1,... [value ...]` per gate. Angles and custom-matrix
/// entries (re im pairs) are printed with 17 significant digits so a round
/// trip is bit exact. Blank lines and lines starting with '#' are skipped.
std::string to_text(const Circuit& c);
Circuit circuit_from_text(std::string_view text);

}  // namespace sesq

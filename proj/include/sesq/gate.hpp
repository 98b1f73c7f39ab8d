#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sesq/sparse_state.hpp"
#include "sesq/statevector.hpp"

namespace sesq {

enum class GateKind {
  X, H, S, Sdg, T, Tdg, Ry, Rz, CNOT, CCX, Custom,
  // Composites; see decompose() in circuit.hpp.
  SWAP, A, MCX, CPREP,
};

std::string_view kind_name(GateKind kind);
GateKind parse_kind(std::string_view name);

/// One gate application. Qubit layouts per kind:
///   CNOT, CCX:  controls..., target
///   A:          first, second (the pair the excitation moves between)
///   MCX:        controls..., target [, helper]  (helper present iff k >= 3)
///   CPREP:      control, targets...
/// Ry/Rz/A carry their angles in `params`; Custom carries a row-major
/// 2^k x 2^k matrix whose local index bit t refers to qubits[t].
struct GateOp {
  GateKind kind = GateKind::X;
  std::vector<int> qubits;
  std::vector<double> params;
  std::shared_ptr<const std::vector<Complex>> matrix;

  static GateOp x(int q) { return {GateKind::X, {q}, {}, nullptr}; }
  static GateOp h(int q) { return {GateKind::H, {q}, {}, nullptr}; }
  static GateOp s(int q) { return {GateKind::S, {q}, {}, nullptr}; }
  static GateOp sdg(int q) { return {GateKind::Sdg, {q}, {}, nullptr}; }
  static GateOp t(int q) { return {GateKind::T, {q}, {}, nullptr}; }
  static GateOp tdg(int q) { return {GateKind::Tdg, {q}, {}, nullptr}; }
  static GateOp ry(int q, double theta) { return {GateKind::Ry, {q}, {theta}, nullptr}; }
  static GateOp rz(int q, double theta) { return {GateKind::Rz, {q}, {theta}, nullptr}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {}, nullptr}; }
  static GateOp ccx(int c0, int c1, int target) { return {GateKind::CCX, {c0, c1, target}, {}, nullptr}; }
  static GateOp swap(int q0, int q1) { return {GateKind::SWAP, {q0, q1}, {}, nullptr}; }
  static GateOp a(int first, int second, double beta, double gamma) {
    return {GateKind::A, {first, second}, {beta, gamma}, nullptr};
  }
  /// `helper` must be a clean ancilla when controls.size() >= 3; ignored otherwise.
  static GateOp mcx(std::span<const int> controls, int target, int helper = -1);
  static GateOp cprep(int control, std::span<const int> targets);
  /// Checks unitarity to 1e-10.
  static GateOp custom(std::vector<int> qubits, std::vector<Complex> matrix);

  bool is_composite() const;
  int num_controls() const;
  /// Throws std::invalid_argument if the qubit list or parameter count does
  /// not fit the kind, or any index falls outside [0, width).
  void validate(int width) const;
};

/// Ry(theta) = exp(-i theta Y / 2).
Matrix2 ry_matrix(double theta);
/// Rz(theta) = exp(-i theta Z / 2).
Matrix2 rz_matrix(double theta);
/// Matrix of a single-qubit primitive kind.
Matrix2 single_qubit_matrix(const GateOp& g);

/// Dense product of the three-CNOT A-gate sequence. Local index bit 0 is the
/// gate's first qubit.
Matrix4 a_gate_matrix(double beta, double gamma);

void apply_gate(StateVector& state, const GateOp& g);
void apply_gate(SparseState& state, const GateOp& g);

}  // namespace sesq

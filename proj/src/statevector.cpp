#include "sesq/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sesq {

namespace {

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli symbol '") + c + "'");
  }
}

void check_width(int width) {
  if (width < 1 || width > 64) throw std::invalid_argument("register width must be in [1, 64]");
}

double checked_real(Complex value, const PauliString& p) {
  if (!p.is_hermitian()) throw std::invalid_argument("Pauli string coefficient must be real");
  const double scale = std::max(1.0, std::abs(p.coefficient()));
  if (std::abs(value.imag()) > 1e-12 * scale)
    throw std::runtime_error("expectation value has an imaginary part of " +
                             std::to_string(value.imag()));
  return value.real();
}

}  // namespace

PauliString::PauliString(std::string_view ops, Complex coefficient) : coefficient_(coefficient) {
  check_width(static_cast<int>(ops.size()));
  ops_.reserve(ops.size());
  for (char c : ops) ops_.push_back(pauli_from_char(c));
}

PauliString::PauliString(std::vector<Pauli> ops, Complex coefficient)
    : ops_(std::move(ops)), coefficient_(coefficient) {
  check_width(width());
}

PauliString PauliString::identity(int width) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(width), Pauli::I), 1.0);
}

PauliString PauliString::single(int width, int qubit, Pauli p, Complex coefficient) {
  std::vector<Pauli> ops(static_cast<std::size_t>(width), Pauli::I);
  ops.at(static_cast<std::size_t>(qubit)) = p;
  return PauliString(std::move(ops), coefficient);
}

PauliString PauliString::pair(int width, int q0, Pauli p0, int q1, Pauli p1, Complex coefficient) {
  if (q0 == q1) throw std::invalid_argument("pair operator needs two distinct qubits");
  std::vector<Pauli> ops(static_cast<std::size_t>(width), Pauli::I);
  ops.at(static_cast<std::size_t>(q0)) = p0;
  ops.at(static_cast<std::size_t>(q1)) = p1;
  return PauliString(std::move(ops), coefficient);
}

PauliMasks PauliString::masks() const {
  PauliMasks m;
  for (int q = 0; q < width(); ++q) {
    const BasisIndex bit = BasisIndex{1} << q;
    switch (ops_[static_cast<std::size_t>(q)]) {
      case Pauli::I: break;
      case Pauli::X: m.flip_mask |= bit; break;
      case Pauli::Y: m.flip_mask |= bit; m.phase_mask |= bit; ++m.num_y; break;
      case Pauli::Z: m.phase_mask |= bit; break;
    }
  }
  return m;
}

std::string PauliString::str() const {
  std::string s;
  for (Pauli p : ops_) s.push_back(static_cast<char>(p));
  return s;
}

StateVector::StateVector(int num_qubits) : StateVector(basis_state(num_qubits, 0)) {}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis_state(int num_qubits, BasisIndex index) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits)
    throw std::invalid_argument("dense register width must be in [1, " +
                                std::to_string(kMaxDenseQubits) + "]");
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::out_of_range("basis index exceeds register dimension");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, double tolerance) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim))
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  const int q = std::countr_zero(dim);
  if (q > kMaxDenseQubits) throw std::invalid_argument("register too wide for dense storage");
  const double n2 = kernels::omp::norm_squared(amplitudes);
  if (std::abs(std::sqrt(n2) - 1.0) > tolerance)
    throw std::invalid_argument("amplitudes are not normalized (norm " + std::to_string(std::sqrt(n2)) + ")");
  return StateVector(q, std::move(amplitudes));
}

double StateVector::norm() const { return std::sqrt(kernels::omp::norm_squared(amplitudes_)); }

Complex expectation(const StateVector& state, const PauliMasks& masks) {
  return kernels::omp::expectation(state.amplitudes(), masks);
}

double expectation_pauli(const StateVector& state, const PauliString& p) {
  if (p.width() != state.num_qubits())
    throw std::invalid_argument("Pauli string width does not match the register");
  return checked_real(p.coefficient() * expectation(state, p.masks()), p);
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("overlap of states with different widths");
  return kernels::omp::inner_product(a.amplitudes(), b.amplitudes());
}

StateVector restrict_to_register(const StateVector& state, int offset, int width, double leak_tolerance) {
  if (offset < 0 || width < 1 || offset + width > state.num_qubits())
    throw std::out_of_range("register slice outside the state");
  const std::size_t dim = std::size_t{1} << width;
  std::vector<Complex> out(dim);
  double kept = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = state.amplitude(static_cast<BasisIndex>(i) << offset);
    kept += std::norm(out[i]);
  }
  const double leaked = std::max(0.0, 1.0 - kept);
  if (leaked > leak_tolerance)
    throw std::runtime_error("probability " + std::to_string(leaked) +
                             " outside the |0> sector of the remaining qubits");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : out) a *= scale;
  return StateVector::from_amplitudes(std::move(out));
}

}  // namespace sesq

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sesq/circuit.hpp"
#include "sesq/sparse_state.hpp"
#include "sesq/statevector.hpp"

namespace {

using namespace sesq;

StateVector from(std::vector<Complex> v) { return StateVector::from_amplitudes(std::move(v)); }

TEST(StateVector, StartsInAllZeroState) {
  StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s.amplitude(0), Complex(1.0));
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(StateVector, RejectsBadConstruction) {
  EXPECT_THROW(StateVector(0), std::invalid_argument);
  EXPECT_THROW(StateVector(kMaxDenseQubits + 1), std::invalid_argument);
  EXPECT_THROW(from({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(from({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(StateVector::basis_state(2, 4), std::out_of_range);
}

TEST(ApplyGate, XOnQubitZeroIsLittleEndian) {
  StateVector s(2);
  apply_gate(s, GateOp::x(0));
  EXPECT_EQ(s.amplitude(0b01), Complex(1.0));
}

TEST(ApplyGate, CnotFlipsTargetWhenControlSet) {
  auto s = StateVector::basis_state(2, 0b01);
  apply_gate(s, GateOp::cnot(0, 1));
  EXPECT_EQ(s.amplitude(0b11), Complex(1.0));
}

TEST(ApplyGate, RejectsOutOfRangeAndNonUnitary) {
  StateVector s(2);
  EXPECT_THROW(apply_gate(s, GateOp::x(2)), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, GateOp::cnot(1, 1)), std::invalid_argument);
  EXPECT_THROW(GateOp::custom({0}, {1.0, 0.0, 0.0, 1.0 + 1e-9}), std::invalid_argument);
  EXPECT_NO_THROW(GateOp::custom({0}, {0.0, 1.0, 1.0, 0.0}));
}

TEST(Expectation, SpecExamples) {
  EXPECT_DOUBLE_EQ(expectation_pauli(StateVector(1), PauliString("Z")), 1.0);
  const double r = 1 / std::sqrt(2.0);
  const auto bell = from({0.0, r, r, 0.0});
  EXPECT_NEAR(expectation_pauli(bell, PauliString("XX")), 1.0, 1e-15);
  // (|01> + i|10>)/sqrt2: X on qubit 0, Y on qubit 1.
  const auto phased = from({0.0, r, Complex(0, r), 0.0});
  EXPECT_NEAR(expectation_pauli(phased, PauliString("XY")), 1.0, 1e-15);
}

TEST(Expectation, MatchesKroneckerOracleOnRandomStates) {
  std::mt19937_64 rng(42);
  const std::string letters = "IXYZ";
  for (int trial = 0; trial < 200; ++trial) {
    const int q = 1 + trial % 5;
    const auto v = oracle::random_state(std::size_t{1} << q, rng);
    std::string ops;
    for (int i = 0; i < q; ++i) ops += letters[rng() % 4];
    const double expect = oracle::expectation(oracle::pauli_string(ops), v);
    EXPECT_NEAR(expectation_pauli(from(v), PauliString(ops, 0.5)), 0.5 * expect, 1e-12) << ops;
  }
}

TEST(Expectation, Errors) {
  EXPECT_THROW(expectation_pauli(StateVector(2), PauliString("Z")), std::invalid_argument);
  EXPECT_THROW(expectation_pauli(StateVector(1), PauliString("Z", Complex(0, 1))), std::invalid_argument);
  EXPECT_THROW(PauliString("ZQ"), std::invalid_argument);
}

TEST(Overlap, Examples) {
  std::mt19937_64 rng(1);
  const auto psi = from(oracle::random_state(8, rng));
  EXPECT_NEAR(std::abs(overlap(psi, psi) - 1.0), 0.0, 1e-14);
  EXPECT_EQ(overlap(StateVector::basis_state(2, 1), StateVector::basis_state(2, 2)), Complex{});
  EXPECT_THROW(overlap(StateVector(1), StateVector(2)), std::invalid_argument);
}

TEST(Overlap, AGateMatrixElementThroughSimulation) {
  // <e_1| A |e_1> with |e_1> = qubit 0 excited; oracle is the closed form.
  const double beta = 0.37, gamma = -1.2;
  auto s = StateVector::basis_state(2, 0b01);
  apply_gate(s, GateOp::a(0, 1, beta, gamma));
  EXPECT_NEAR(std::abs(overlap(StateVector::basis_state(2, 0b01), s) - oracle::a_gate(beta, gamma)(1, 1)), 0.0, 1e-12);
}

TEST(StateVector, NormPreservedOverRandomGateSequences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-3.2, 3.2);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector s(6);
    for (int g = 0; g < 200; ++g) {
      const int a = static_cast<int>(rng() % 6), b = (a + 1 + static_cast<int>(rng() % 5)) % 6;
      switch (rng() % 6) {
        case 0: apply_gate(s, GateOp::h(a)); break;
        case 1: apply_gate(s, GateOp::ry(a, ang(rng))); break;
        case 2: apply_gate(s, GateOp::rz(a, ang(rng))); break;
        case 3: apply_gate(s, GateOp::cnot(a, b)); break;
        case 4: apply_gate(s, GateOp::a(a, b, ang(rng), ang(rng))); break;
        default: apply_gate(s, GateOp::swap(a, b)); break;
      }
      ASSERT_LT(std::abs(s.norm() - 1.0), 1e-12);
    }
  }
}

TEST(StateVector, RestrictToRegister) {
  // |data=10> on qubits 1..2 with qubits 0 and 3 at zero.
  auto s = StateVector::basis_state(4, 0b0100);
  const auto r = restrict_to_register(s, 1, 2);
  EXPECT_EQ(r.amplitude(0b10), Complex(1.0));
  apply_gate(s, GateOp::h(0));
  EXPECT_THROW(restrict_to_register(s, 1, 2), std::runtime_error);
}

TEST(SparseState, AgreesWithDenseSimulation) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(-3.2, 3.2);
  Circuit c(5);
  for (int g = 0; g < 60; ++g) {
    const int a = static_cast<int>(rng() % 5), b = (a + 1 + static_cast<int>(rng() % 4)) % 5;
    switch (rng() % 5) {
      case 0: c.append(GateOp::h(a)); break;
      case 1: c.append(GateOp::ry(a, ang(rng))); break;
      case 2: c.append(GateOp::cnot(a, b)); break;
      case 3: c.append(GateOp::a(a, b, ang(rng), ang(rng))); break;
      default: c.append(GateOp::swap(a, b)); break;
    }
  }
  c.append(GateOp::custom({1, 3}, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}));
  const auto dense = run_dense(c);
  const auto sparse = run_sparse(c);
  EXPECT_LT(std::abs(overlap(dense, sparse.to_dense()) - 1.0), 1e-12);
  const PauliString p("XYZIX", 1.0);
  EXPECT_NEAR(expectation_pauli(dense, p), expectation_pauli(sparse, p), 1e-12);
}

TEST(SparseState, HandlesWideOneHotRegisters) {
  // 64 qubits: a walk of the excitation from qubit 0 to 63 stays one-hot.
  SparseState s = SparseState::basis_state(64, 1);
  for (int j = 0; j < 63; ++j) s.apply_2q(j, j + 1, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  EXPECT_EQ(s.support_size(), 1u);
  EXPECT_EQ(s.amplitude(BasisIndex{1} << 63), Complex(1.0));
  EXPECT_NEAR(expectation_pauli(s, PauliString::single(64, 63, Pauli::Z)), -1.0, 1e-15);
}

}  // namespace

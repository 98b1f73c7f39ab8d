#include "sesq/gate.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sesq {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 15> kNames{{
    {GateKind::X, "X"},       {GateKind::H, "H"},       {GateKind::S, "S"},
    {GateKind::Sdg, "SDG"},   {GateKind::T, "T"},       {GateKind::Tdg, "TDG"},
    {GateKind::Ry, "RY"},     {GateKind::Rz, "RZ"},     {GateKind::CNOT, "CNOT"},
    {GateKind::CCX, "CCX"},   {GateKind::Custom, "CUSTOM"}, {GateKind::SWAP, "SWAP"},
    {GateKind::A, "A"},       {GateKind::MCX, "MCX"},   {GateKind::CPREP, "CPREP"},
}};

BasisIndex bit(int q) { return BasisIndex{1} << q; }

Matrix4 cnot_local(bool first_controls) {
  // Local index bit0 = first qubit, bit1 = second.
  Matrix4 m{};
  for (int c = 0; c < 4; ++c) {
    int r = c;
    if (first_controls && (c & 1)) r ^= 2;
    if (!first_controls && (c & 2)) r ^= 1;
    m[static_cast<std::size_t>(r * 4 + c)] = 1.0;
  }
  return m;
}

template <class Fn>
void for_each_distinct(const std::vector<int>& qubits, Fn&& fail) {
  for (std::size_t i = 0; i < qubits.size(); ++i)
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      if (qubits[i] == qubits[j]) fail();
}

}  // namespace

std::string_view kind_name(GateKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  throw std::logic_error("unnamed gate kind");
}

GateKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

GateOp GateOp::mcx(std::span<const int> controls, int target, int helper) {
  GateOp g{GateKind::MCX, {controls.begin(), controls.end()}, {}, nullptr};
  g.qubits.push_back(target);
  if (controls.size() >= 3) {
    if (helper < 0) throw std::invalid_argument("MCX with three or more controls needs a helper qubit");
    g.qubits.push_back(helper);
  }
  if (controls.empty()) throw std::invalid_argument("MCX needs at least one control");
  return g;
}

GateOp GateOp::cprep(int control, std::span<const int> targets) {
  GateOp g{GateKind::CPREP, {control}, {}, nullptr};
  g.qubits.insert(g.qubits.end(), targets.begin(), targets.end());
  return g;
}

GateOp GateOp::custom(std::vector<int> qubits, std::vector<Complex> matrix) {
  const std::size_t dim = std::size_t{1} << qubits.size();
  if (qubits.empty() || matrix.size() != dim * dim)
    throw std::invalid_argument("custom gate matrix must be 2^k x 2^k for k >= 1 qubits");
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      Complex acc{};
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(matrix[k * dim + r]) * matrix[k * dim + c];
      const Complex expect = r == c ? 1.0 : 0.0;
      if (std::abs(acc - expect) > 1e-10) throw std::invalid_argument("custom gate is not unitary");
    }
  return {GateKind::Custom, std::move(qubits), {},
          std::make_shared<const std::vector<Complex>>(std::move(matrix))};
}

bool GateOp::is_composite() const {
  return kind == GateKind::SWAP || kind == GateKind::A || kind == GateKind::MCX ||
         kind == GateKind::CPREP;
}

int GateOp::num_controls() const {
  switch (kind) {
    case GateKind::CNOT: return 1;
    case GateKind::CCX: return 2;
    case GateKind::CPREP: return 1;
    case GateKind::MCX: {
      const int size = static_cast<int>(qubits.size());
      return size <= 3 ? size - 1 : size - 2;
    }
    default: return 0;
  }
}

void GateOp::validate(int width) const {
  const auto fail = [this](const std::string& why) {
    throw std::invalid_argument(std::string(kind_name(kind)) + " gate: " + why);
  };
  std::size_t want_qubits = 0;
  std::size_t want_params = 0;
  switch (kind) {
    case GateKind::X: case GateKind::H: case GateKind::S: case GateKind::Sdg:
    case GateKind::T: case GateKind::Tdg: want_qubits = 1; break;
    case GateKind::Ry: case GateKind::Rz: want_qubits = 1; want_params = 1; break;
    case GateKind::CNOT: case GateKind::SWAP: want_qubits = 2; break;
    case GateKind::CCX: want_qubits = 3; break;
    case GateKind::A: want_qubits = 2; want_params = 2; break;
    case GateKind::MCX:
      if (qubits.size() < 2 || qubits.size() == 4) fail("expects k+1 qubits for k <= 2 or k+2 for k >= 3");
      want_qubits = qubits.size();
      break;
    case GateKind::CPREP:
      if (qubits.empty()) fail("needs a control qubit");
      want_qubits = qubits.size();
      break;
    case GateKind::Custom:
      if (!matrix || matrix->size() != (std::size_t{1} << (2 * qubits.size())))
        fail("matrix size does not match qubit count");
      want_qubits = qubits.size();
      break;
  }
  if (qubits.size() != want_qubits) fail("wrong number of qubits");
  if (params.size() != want_params) fail("wrong number of angles");
  for (int q : qubits)
    if (q < 0 || q >= width) fail("qubit index " + std::to_string(q) + " outside register of width " + std::to_string(width));
  for_each_distinct(qubits, [&] { fail("repeated qubit index"); });
  for (double p : params)
    if (!std::isfinite(p)) fail("non-finite angle");
}

Matrix2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

Matrix2 rz_matrix(double theta) {
  return {std::polar(1.0, -theta / 2), Complex{}, Complex{}, std::polar(1.0, theta / 2)};
}

Matrix2 single_qubit_matrix(const GateOp& g) {
  constexpr double r = std::numbers::sqrt2 / 2;
  switch (g.kind) {
    case GateKind::X: return {Complex{0}, Complex{1}, Complex{1}, Complex{0}};
    case GateKind::H: return {Complex{r}, Complex{r}, Complex{r}, Complex{-r}};
    case GateKind::S: return {Complex{1}, Complex{}, Complex{}, Complex{0, 1}};
    case GateKind::Sdg: return {Complex{1}, Complex{}, Complex{}, Complex{0, -1}};
    case GateKind::T: return {Complex{1}, Complex{}, Complex{}, Complex{r, r}};
    case GateKind::Tdg: return {Complex{1}, Complex{}, Complex{}, Complex{r, -r}};
    case GateKind::Ry: return ry_matrix(g.params.at(0));
    case GateKind::Rz: return rz_matrix(g.params.at(0));
    default: throw std::invalid_argument("not a single-qubit gate");
  }
}

Matrix4 a_gate_matrix(double beta, double gamma) {
  // Build column by column by running the decomposition on each basis state
  // of a two-qubit register (qubit 0 = first).
  const Matrix4 cx01 = cnot_local(true);
  const Matrix4 cx10 = cnot_local(false);
  Matrix4 out{};
  for (int col = 0; col < 4; ++col) {
    std::array<Complex, 4> v{};
    v[static_cast<std::size_t>(col)] = 1.0;
    std::span<Complex> amps(v);
    kernels::serial::apply_2q(amps, 0, 1, cx01);
    kernels::serial::apply_1q(amps, 0, rz_matrix(-(gamma + std::numbers::pi)));
    kernels::serial::apply_1q(amps, 0, ry_matrix(-(beta + std::numbers::pi / 2)));
    kernels::serial::apply_2q(amps, 0, 1, cx10);
    kernels::serial::apply_1q(amps, 0, ry_matrix(beta + std::numbers::pi / 2));
    kernels::serial::apply_1q(amps, 0, rz_matrix(gamma + std::numbers::pi));
    kernels::serial::apply_2q(amps, 0, 1, cx01);
    for (int row = 0; row < 4; ++row)
      out[static_cast<std::size_t>(row * 4 + col)] = v[static_cast<std::size_t>(row)];
  }
  return out;
}

namespace {

BasisIndex control_mask(const GateOp& g) {
  BasisIndex mask = 0;
  for (int i = 0; i < g.num_controls(); ++i) mask |= bit(g.qubits[static_cast<std::size_t>(i)]);
  return mask;
}

int target_of(const GateOp& g) { return g.qubits[static_cast<std::size_t>(g.num_controls())]; }

template <class State, class Apply1, class Apply2, class ApplyK, class ApplyMcx, class ApplySwap>
void dispatch(State& state, const GateOp& g, Apply1 a1, Apply2 a2, ApplyK ak, ApplyMcx mcx, ApplySwap sw) {
  g.validate(state.num_qubits());
  switch (g.kind) {
    case GateKind::CNOT:
    case GateKind::CCX:
    case GateKind::MCX:
      mcx(control_mask(g), target_of(g));
      break;
    case GateKind::CPREP:
      for (std::size_t i = 1; i < g.qubits.size(); ++i) mcx(bit(g.qubits[0]), g.qubits[i]);
      break;
    case GateKind::SWAP: sw(g.qubits[0], g.qubits[1]); break;
    case GateKind::A: a2(g.qubits[0], g.qubits[1], a_gate_matrix(g.params[0], g.params[1])); break;
    case GateKind::Custom: ak(std::span<const int>(g.qubits), std::span<const Complex>(*g.matrix)); break;
    default: a1(g.qubits[0], single_qubit_matrix(g)); break;
  }
}

}  // namespace

void apply_gate(StateVector& state, const GateOp& g) {
  auto amps = state.mutable_amplitudes();
  dispatch(
      state, g, [&](int q, const Matrix2& m) { kernels::omp::apply_1q(amps, q, m); },
      [&](int q0, int q1, const Matrix4& m) { kernels::omp::apply_2q(amps, q0, q1, m); },
      [&](std::span<const int> qs, std::span<const Complex> m) { kernels::omp::apply_kq(amps, qs, m); },
      [&](BasisIndex mask, int t) { kernels::omp::apply_mcx(amps, mask, t); },
      [&](int q0, int q1) { kernels::omp::apply_swap(amps, q0, q1); });
}

void apply_gate(SparseState& state, const GateOp& g) {
  dispatch(
      state, g, [&](int q, const Matrix2& m) { state.apply_1q(q, m); },
      [&](int q0, int q1, const Matrix4& m) { state.apply_2q(q0, q1, m); },
      [&](std::span<const int> qs, std::span<const Complex> m) { state.apply_kq(qs, m); },
      [&](BasisIndex mask, int t) { state.apply_mcx(mask, t); },
      [&](int q0, int q1) { state.apply_swap(q0, q1); });
}

}  // namespace sesq

#include "sesq/ansatz.hpp"

#include <stdexcept>
#include <string>

namespace sesq {

namespace {

void check_params(std::span<const double> params, std::size_t expected, const char* what) {
  if (params.size() != expected)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) + " parameters, got " +
                                std::to_string(params.size()));
}

std::vector<int> set_bits(BasisIndex word, int offset, int width) {
  std::vector<int> out;
  for (int l = 0; l < width; ++l)
    if (word >> l & 1) out.push_back(offset + l);
  return out;
}

// X-conjugated multi-controlled X that fires when the data register holds `word`.
void unflag_on_match(Circuit& c, const BinaryLayout& lay, BasisIndex word, int target) {
  std::vector<int> zeros;
  std::vector<int> controls;
  for (int l = 0; l < lay.data_width; ++l) {
    controls.push_back(lay.data_offset + l);
    if (!(word >> l & 1)) zeros.push_back(lay.data_offset + l);
  }
  for (int q : zeros) c.append(GateOp::x(q));
  c.append(GateOp::mcx(controls, target, lay.helper));
  for (int q : zeros) c.append(GateOp::x(q));
}

}  // namespace

Circuit build_ses_circuit(std::span<const double> params, int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("number of sites must be >= 1");
  check_params(params, static_cast<std::size_t>(ses_param_count(n_sites)), "one-hot ansatz");
  Circuit c(n_sites, "one_hot_ses");
  c.append(GateOp::x(0));
  for (int j = 0; j + 1 < n_sites; ++j)
    c.append(GateOp::a(j, j + 1, params[static_cast<std::size_t>(2 * j)], params[static_cast<std::size_t>(2 * j + 1)]));
  return c;
}

BinaryLayout binary_layout(const EncodingMap& map) {
  BinaryLayout lay;
  lay.data_width = map.num_qubits();
  lay.helper = lay.data_width >= 3 ? lay.data_offset + lay.data_width : -1;
  lay.width = lay.data_offset + lay.data_width + (lay.helper >= 0 ? 1 : 0);
  return lay;
}

Circuit build_binary_ses_circuit(std::span<const double> params, const EncodingMap& map, PrepStrategy prep) {
  const int n_sites = map.num_sites();
  check_params(params, static_cast<std::size_t>(ses_param_count(n_sites)), "binary ansatz");
  if (prep == PrepStrategy::FromZero && map.mode() != EncodingMode::Shifted)
    throw std::invalid_argument("from-zero preparation needs the shifted encoding");
  const BinaryLayout lay = binary_layout(map);
  Circuit c(lay.width, "binary_ses");
  c.append(GateOp::x(lay.carrier));
  if (prep == PrepStrategy::Incremental)
    for (int q : set_bits(map.codeword(0), lay.data_offset, lay.data_width)) c.append(GateOp::x(q));

  for (int i = 0; i + 1 < n_sites; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    c.append(GateOp::a(lay.carrier, lay.flag, params[2 * ui], params[2 * ui + 1]));
    // The amplitude that stays behind is on the carrier; after the swap it
    // sits on the flag and is the branch deposited at site i.
    c.append(GateOp::swap(lay.carrier, lay.flag));
    if (prep == PrepStrategy::Incremental) {
      const BasisIndex delta = map.codeword(i) ^ map.codeword(i + 1);
      c.append(GateOp::cprep(lay.carrier, set_bits(delta, lay.data_offset, lay.data_width)));
    } else {
      c.append(GateOp::cprep(lay.flag, set_bits(map.codeword(i), lay.data_offset, lay.data_width)));
    }
    unflag_on_match(c, lay, map.codeword(i), lay.flag);
  }

  const BasisIndex last = map.codeword(n_sites - 1);
  if (prep == PrepStrategy::FromZero)
    c.append(GateOp::cprep(lay.carrier, set_bits(last, lay.data_offset, lay.data_width)));
  unflag_on_match(c, lay, last, lay.carrier);
  return c;
}

Circuit build_hardware_efficient_circuit(int n, int layers, std::span<const double> params) {
  if (n < 1 || layers < 0) throw std::invalid_argument("hardware-efficient ansatz needs n >= 1 and layers >= 0");
  check_params(params, static_cast<std::size_t>(hardware_efficient_param_count(n, layers)), "hardware-efficient ansatz");
  Circuit c(n, "hardware_efficient");
  std::size_t p = 0;
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < n; ++q) c.append(GateOp::ry(q, params[p++]));
    for (int q = 0; q < n; ++q) c.append(GateOp::rz(q, params[p++]));
    if (n == 2) c.append(GateOp::cnot(0, 1));
    if (n >= 3)
      for (int q = 0; q < n; ++q) c.append(GateOp::cnot(q, (q + 1) % n));
  }
  return c;
}

std::vector<Complex> one_hot_amplitudes(const SparseState& state) {
  std::vector<Complex> out(static_cast<std::size_t>(state.num_qubits()));
  for (int j = 0; j < state.num_qubits(); ++j) out[static_cast<std::size_t>(j)] = state.amplitude(BasisIndex{1} << j);
  return out;
}

std::vector<Complex> one_hot_amplitudes(const StateVector& state) {
  std::vector<Complex> out(static_cast<std::size_t>(state.num_qubits()));
  for (int j = 0; j < state.num_qubits(); ++j) out[static_cast<std::size_t>(j)] = state.amplitude(BasisIndex{1} << j);
  return out;
}

std::vector<Complex> binary_site_amplitudes(const StateVector& state, const EncodingMap& map) {
  const BinaryLayout lay = binary_layout(map);
  if (state.num_qubits() != lay.width) throw std::invalid_argument("state width does not match the binary layout");
  const StateVector data = restrict_to_register(state, lay.data_offset, lay.data_width);
  std::vector<Complex> out(static_cast<std::size_t>(map.num_sites()));
  for (int k = 0; k < map.num_sites(); ++k) out[static_cast<std::size_t>(k)] = data.amplitude(map.codeword(k));
  return out;
}

}  // namespace sesq

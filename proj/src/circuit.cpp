#include "sesq/circuit.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sesq {

Circuit::Circuit(int width, std::string label) : width_(width), label_(std::move(label)) {
  if (width < 1 || width > 64) throw std::invalid_argument("circuit width must be in [1, 64]");
}

void Circuit::append(GateOp g) {
  g.validate(width_);
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.width_ > width_) throw std::invalid_argument("appended circuit is wider than the target");
  for (const auto& g : other.gates_) gates_.push_back(g);
}

bool Circuit::is_primitive() const {
  return std::none_of(gates_.begin(), gates_.end(), [](const GateOp& g) { return g.is_composite(); });
}

namespace {

void emit_ccx(Circuit& out, int a, int b, int t, bool expand) {
  if (!expand) {
    out.append(GateOp::ccx(a, b, t));
    return;
  }
  out.append(GateOp::h(t));
  out.append(GateOp::cnot(b, t));
  out.append(GateOp::tdg(t));
  out.append(GateOp::cnot(a, t));
  out.append(GateOp::t(t));
  out.append(GateOp::cnot(b, t));
  out.append(GateOp::tdg(t));
  out.append(GateOp::cnot(a, t));
  out.append(GateOp::t(b));
  out.append(GateOp::t(t));
  out.append(GateOp::h(t));
  out.append(GateOp::cnot(a, b));
  out.append(GateOp::t(a));
  out.append(GateOp::tdg(b));
  out.append(GateOp::cnot(a, b));
}

struct Toffoli {
  int a, b, t;
};

// Computes AND(ys) into a qubit of `free_pair` (both must be clean, i.e. |0>)
// and returns where the result lives. Each level borrows the two qubits it
// just consumed, flipped to |1> on the branch where they matter, as the clean
// workspace of the next level; the caller replays the emitted list in reverse
// to uncompute.
int and_into(std::span<const int> ys, std::array<int, 2> free_pair, std::vector<Toffoli>& body,
             std::vector<int>& x_flips, std::vector<std::size_t>& x_positions) {
  if (ys.size() == 1) return ys[0];
  if (ys.size() == 2) {
    body.push_back({ys[0], ys[1], free_pair[0]});
    return free_pair[0];
  }
  body.push_back({ys[0], ys[1], free_pair[0]});
  x_positions.push_back(body.size());
  x_flips.push_back(ys[0]);
  x_positions.push_back(body.size());
  x_flips.push_back(ys[1]);
  const int w = and_into(ys.subspan(2), {ys[0], ys[1]}, body, x_flips, x_positions);
  body.push_back({free_pair[0], w, free_pair[1]});
  return free_pair[1];
}

void emit_mcx(Circuit& out, const GateOp& g, bool expand) {
  const int k = g.num_controls();
  const auto& q = g.qubits;
  if (k == 1) {
    out.append(GateOp::cnot(q[0], q[1]));
    return;
  }
  if (k == 2) {
    emit_ccx(out, q[0], q[1], q[2], expand);
    return;
  }
  const int c0 = q[0], c1 = q[1];
  const int target = q[static_cast<std::size_t>(k)];
  const int helper = q[static_cast<std::size_t>(k + 1)];
  // helper <- c0 AND c1; then the remaining controls are ANDed using c0, c1
  // (flipped, so they read |0> exactly when the helper is |1>) as workspace.
  emit_ccx(out, c0, c1, helper, expand);
  if (k == 3) {
    emit_ccx(out, helper, q[2], target, expand);
    emit_ccx(out, c0, c1, helper, expand);
    return;
  }
  std::vector<Toffoli> body;
  std::vector<int> flips;
  std::vector<std::size_t> flip_at;
  std::vector<int> rest(q.begin() + 2, q.begin() + k);
  const int res = and_into(rest, {c0, c1}, body, flips, flip_at);

  // Program = X(c0) X(c1), body with interleaved flips, CCX(helper,res->t), reverse.
  struct Step {
    bool is_x;
    int x;
    Toffoli t;
  };
  std::vector<Step> forward;
  forward.push_back({true, c0, {}});
  forward.push_back({true, c1, {}});
  std::size_t next_flip = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    while (next_flip < flips.size() && flip_at[next_flip] == i) forward.push_back({true, flips[next_flip++], {}});
    if (i < body.size()) forward.push_back({false, 0, body[i]});
  }
  const auto play = [&](const Step& s) {
    if (s.is_x) out.append(GateOp::x(s.x));
    else emit_ccx(out, s.t.a, s.t.b, s.t.t, expand);
  };
  for (const auto& s : forward) play(s);
  emit_ccx(out, helper, res, target, expand);
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) play(*it);
  emit_ccx(out, c0, c1, helper, expand);
}

}  // namespace

Circuit decompose(const Circuit& c, DecomposeOptions options) {
  Circuit out(c.width(), c.label());
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::SWAP:
        out.append(GateOp::cnot(g.qubits[0], g.qubits[1]));
        out.append(GateOp::cnot(g.qubits[1], g.qubits[0]));
        out.append(GateOp::cnot(g.qubits[0], g.qubits[1]));
        break;
      case GateKind::A: {
        const int q0 = g.qubits[0], q1 = g.qubits[1];
        const double beta = g.params[0], gamma = g.params[1];
        out.append(GateOp::cnot(q0, q1));
        out.append(GateOp::rz(q0, -(gamma + std::numbers::pi)));
        out.append(GateOp::ry(q0, -(beta + std::numbers::pi / 2)));
        out.append(GateOp::cnot(q1, q0));
        out.append(GateOp::ry(q0, beta + std::numbers::pi / 2));
        out.append(GateOp::rz(q0, gamma + std::numbers::pi));
        out.append(GateOp::cnot(q0, q1));
        break;
      }
      case GateKind::MCX: emit_mcx(out, g, options.expand_toffoli); break;
      case GateKind::CPREP:
        for (std::size_t i = 1; i < g.qubits.size(); ++i) out.append(GateOp::cnot(g.qubits[0], g.qubits[i]));
        break;
      case GateKind::CCX: emit_ccx(out, g.qubits[0], g.qubits[1], g.qubits[2], options.expand_toffoli); break;
      default: out.append(g); break;
    }
  }
  return out;
}

GateCounts gate_counts(const Circuit& c) {
  GateCounts counts;
  counts.width = c.width();
  std::vector<int> level(static_cast<std::size_t>(c.width()), 0);
  for (const auto& g : c.gates()) {
    if (g.is_composite())
      throw std::invalid_argument("gate_counts needs a decomposed circuit; found " + std::string(kind_name(g.kind)));
    switch (g.kind) {
      case GateKind::CNOT: ++counts.cnot_count; break;
      case GateKind::CCX: counts.cnot_count += 6; ++counts.toffoli_count; break;
      case GateKind::Custom: break;
      default: ++counts.single_qubit_count; break;
    }
    int layer = 0;
    for (int q : g.qubits) layer = std::max(layer, level[static_cast<std::size_t>(q)]);
    ++layer;
    for (int q : g.qubits) level[static_cast<std::size_t>(q)] = layer;
    counts.depth = std::max(counts.depth, layer);
  }
  return counts;
}

GateCounts circuit_metadata(const Circuit& c) {
  return gate_counts(decompose(c, {.expand_toffoli = true}));
}

void simulate(const Circuit& c, StateVector& state) {
  if (state.num_qubits() != c.width()) throw std::invalid_argument("state width does not match circuit width");
  for (const auto& g : c.gates()) apply_gate(state, g);
}

void simulate(const Circuit& c, SparseState& state) {
  if (state.num_qubits() != c.width()) throw std::invalid_argument("state width does not match circuit width");
  for (const auto& g : c.gates()) apply_gate(state, g);
}

StateVector run_dense(const Circuit& c) {
  StateVector s(c.width());
  simulate(c, s);
  return s;
}

SparseState run_sparse(const Circuit& c) {
  SparseState s(c.width());
  simulate(c, s);
  return s;
}

namespace {

void put_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += ' ';
  out += buf;
}

double parse_double(const std::string& tok, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  return v;
}

int parse_int(std::string_view tok, int line_no) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
  return v;
}

}  // namespace

std::string to_text(const Circuit& c) {
  std::string out = "WIDTH " + std::to_string(c.width()) + "\n";
  if (!c.label().empty()) out += "LABEL " + c.label() + "\n";
  for (const auto& g : c.gates()) {
    out += "GATE ";
    out += kind_name(g.kind);
    out += ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.qubits[i]);
    }
    for (double p : g.params) put_double(out, p);
    if (g.matrix)
      for (const Complex& z : *g.matrix) {
        put_double(out, z.real());
        put_double(out, z.imag());
      }
    out += '\n';
  }
  return out;
}

Circuit circuit_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<Circuit> circuit;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "WIDTH") {
      if (circuit) throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate WIDTH");
      std::string w;
      ls >> w;
      circuit.emplace(parse_int(w, line_no));
      continue;
    }
    if (!circuit) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected WIDTH header first");
    if (head == "LABEL") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      circuit->set_label(rest);
      continue;
    }
    if (head != "GATE") throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown record '" + head + "'");
    std::string kind_tok, qubit_tok;
    ls >> kind_tok >> qubit_tok;
    GateOp g;
    g.kind = parse_kind(kind_tok);
    std::string_view qs = qubit_tok;
    while (!qs.empty()) {
      const auto comma = qs.find(',');
      g.qubits.push_back(parse_int(qs.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      qs.remove_prefix(comma + 1);
    }
    std::vector<double> values;
    for (std::string tok; ls >> tok;) values.push_back(parse_double(tok, line_no));
    if (g.kind == GateKind::Custom) {
      if (values.size() % 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": odd matrix value count");
      std::vector<Complex> m;
      for (std::size_t i = 0; i < values.size(); i += 2) m.emplace_back(values[i], values[i + 1]);
      g = GateOp::custom(std::move(g.qubits), std::move(m));
    } else {
      g.params = std::move(values);
    }
    try {
      circuit->append(std::move(g));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!circuit) throw std::invalid_argument("circuit text has no WIDTH header");
  return std::move(*circuit);
}

}  // namespace sesq

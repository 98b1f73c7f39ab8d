#include "sesq/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace sesq {

namespace {

bool is_z_type(SettingKind k) { return k == SettingKind::MZ || k == SettingKind::BZ; }
bool is_cos_type(SettingKind k) { return k == SettingKind::MXX || k == SettingKind::BX; }
bool is_sin_type(SettingKind k) { return k == SettingKind::MXY || k == SettingKind::BY; }
bool is_binary(SettingKind k) { return k == SettingKind::BZ || k == SettingKind::BX || k == SettingKind::BY; }

Pauli as_pauli(MeasureBasis b) {
  switch (b) {
    case MeasureBasis::X: return Pauli::X;
    case MeasureBasis::Y: return Pauli::Y;
    case MeasureBasis::Z: return Pauli::Z;
  }
  return Pauli::I;
}

double parity_sign(BasisIndex b, int q) { return (b >> q & 1) ? -1.0 : 1.0; }

// Adjacent-pair correlator sign: M_XY measures (Y, X) on pairs starting at an
// odd site, and <Y_j X_k> = -<X_j Y_k> on the single-excitation subspace.
double xy_orientation(const MeasurementSetting& s, int j) {
  return s.kind == SettingKind::MXY && s.bases[static_cast<std::size_t>(j)] == MeasureBasis::Y ? -1.0 : 1.0;
}

// One-hot estimator over an outcome distribution given as (outcome, weight)
// pairs with weights summing to one.
template <class Outcomes>
void accumulate_original(SettingEstimates& est, const Outcomes& outcomes, int n_sites) {
  const auto& s = est.setting;
  if (is_z_type(s.kind)) {
    est.site_weights.assign(static_cast<std::size_t>(n_sites), 0.0);
    for (const auto& [b, w] : outcomes)
      for (int j = 0; j < n_sites; ++j)
        if (b >> j & 1) est.site_weights[static_cast<std::size_t>(j)] += w;
    return;
  }
  for (int j = 0; j + 1 < n_sites; ++j) {
    double v = 0.0;
    for (const auto& [b, w] : outcomes) v += w * parity_sign(b, j) * parity_sign(b, j + 1);
    est.pairs.push_back({j, j + 1, xy_orientation(s, j) * v});
  }
}

template <class Outcomes>
void accumulate_binary(SettingEstimates& est, const Outcomes& outcomes, const EncodingMap& map, bool count_shots,
                       double shot_scale) {
  const auto& s = est.setting;
  if (s.kind == SettingKind::BZ) {
    est.site_weights.assign(static_cast<std::size_t>(map.num_sites()), 0.0);
    for (const auto& [b, w] : outcomes) {
      if (const auto site = map.site_of(b)) {
        est.site_weights[static_cast<std::size_t>(*site)] += w;
      } else {
        est.unknown_weight += w;
        if (count_shots) est.unknown_shots += static_cast<std::uint64_t>(std::llround(w * shot_scale));
      }
    }
    return;
  }
  const int l = s.position;
  const BasisIndex bit = BasisIndex{1} << l;
  std::vector<int> edge_of(std::size_t{1} << map.num_qubits(), -1);
  for (const auto& e : hypercube_edges(map)) {
    if (e.position != l) continue;
    edge_of[map.codeword(e.j) & ~bit] = static_cast<int>(est.pairs.size());
    est.pairs.push_back({e.j, e.k, 0.0});
  }
  for (const auto& [b, w] : outcomes) {
    const int e = edge_of[b & ~bit];
    if (e >= 0) est.pairs[static_cast<std::size_t>(e)].value += w * parity_sign(b, l);
  }
  if (s.kind == SettingKind::BY) {
    // The raw average is 2|a_u||a_v| sin(theta_v - theta_u) with u the codeword
    // whose bit l is 0; flip it when that is site k rather than site j.
    for (auto& p : est.pairs)
      if (map.codeword(p.j) & bit) p.value = -p.value;
  }
}

std::vector<std::pair<BasisIndex, double>> histogram_weights(const ShotHistogram& hist) {
  std::vector<std::pair<BasisIndex, double>> out;
  out.reserve(hist.counts.size());
  const double total = static_cast<double>(hist.total_shots);
  for (const auto& [b, c] : hist.counts) out.emplace_back(b, static_cast<double>(c) / total);
  return out;
}

void check_width(const MeasurementSetting& s, int width) {
  if (static_cast<int>(s.bases.size()) != width)
    throw std::invalid_argument("setting " + s.label() + " spans " + std::to_string(s.bases.size()) +
                                " qubits but the register has " + std::to_string(width));
}

double wrap_phase(double x) {
  double r = std::remainder(x, 2 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2 * std::numbers::pi;
  return r;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

}  // namespace

std::string MeasurementSetting::label() const {
  switch (kind) {
    case SettingKind::MZ: return "M_Z";
    case SettingKind::MXX: return "M_XX";
    case SettingKind::MXY: return "M_XY";
    case SettingKind::BZ: return "BZ";
    case SettingKind::BX: return "BX(" + std::to_string(position) + ")";
    case SettingKind::BY: return "BY(" + std::to_string(position) + ")";
  }
  return {};
}

std::string MeasurementSetting::basis_string() const {
  std::string s;
  for (auto b : bases) s += static_cast<char>(b);
  return s;
}

std::vector<MeasurementSetting> settings_original(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("number of sites must be >= 1");
  const auto n = static_cast<std::size_t>(n_sites);
  MeasurementSetting z{SettingKind::MZ, -1, std::vector<MeasureBasis>(n, MeasureBasis::Z)};
  MeasurementSetting xx{SettingKind::MXX, -1, std::vector<MeasureBasis>(n, MeasureBasis::X)};
  MeasurementSetting xy{SettingKind::MXY, -1, {}};
  for (std::size_t q = 0; q < n; ++q) xy.bases.push_back(q % 2 == 0 ? MeasureBasis::X : MeasureBasis::Y);
  return {z, xx, xy};
}

std::vector<MeasurementSetting> settings_binary(int n) {
  if (n < 1) throw std::invalid_argument("register width must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  std::vector<MeasurementSetting> out;
  out.push_back({SettingKind::BZ, -1, std::vector<MeasureBasis>(un, MeasureBasis::Z)});
  for (int l = 0; l < n; ++l) {
    MeasurementSetting s{SettingKind::BX, l, std::vector<MeasureBasis>(un, MeasureBasis::Z)};
    s.bases[static_cast<std::size_t>(l)] = MeasureBasis::X;
    out.push_back(std::move(s));
  }
  for (int l = 0; l < n; ++l) {
    MeasurementSetting s{SettingKind::BY, l, std::vector<MeasureBasis>(un, MeasureBasis::Z)};
    s.bases[static_cast<std::size_t>(l)] = MeasureBasis::Y;
    out.push_back(std::move(s));
  }
  return out;
}

SettingEstimates estimate_setting_exact(const SparseState& one_hot, const MeasurementSetting& s) {
  if (is_binary(s.kind)) throw std::invalid_argument("binary setting " + s.label() + " needs an encoding map");
  const int n = one_hot.num_qubits();
  check_width(s, n);
  SettingEstimates est{s, 0, {}, {}, 0.0, 0};
  if (is_z_type(s.kind)) {
    est.site_weights.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double z = expectation(one_hot, PauliString::single(n, j, Pauli::Z).masks()).real();
      est.site_weights[static_cast<std::size_t>(j)] = (1.0 - z) / 2.0;
    }
    return est;
  }
  for (int j = 0; j + 1 < n; ++j) {
    const auto pj = as_pauli(s.bases[static_cast<std::size_t>(j)]);
    const auto pk = as_pauli(s.bases[static_cast<std::size_t>(j + 1)]);
    const double v = expectation(one_hot, PauliString::pair(n, j, pj, j + 1, pk).masks()).real();
    est.pairs.push_back({j, j + 1, xy_orientation(s, j) * v});
  }
  return est;
}

SettingEstimates estimate_setting_exact(const StateVector& data, const MeasurementSetting& s, const EncodingMap& map) {
  if (!is_binary(s.kind)) throw std::invalid_argument("setting " + s.label() + " is not a binary-protocol setting");
  if (data.num_qubits() != map.num_qubits()) throw std::invalid_argument("data register width differs from the map");
  check_width(s, data.num_qubits());
  const auto p = basis_probabilities(data, s.bases);
  std::vector<std::pair<BasisIndex, double>> outcomes;
  for (BasisIndex b = 0; b < p.size(); ++b)
    if (p[b] > 0.0) outcomes.emplace_back(b, p[b]);
  SettingEstimates est{s, 0, {}, {}, 0.0, 0};
  accumulate_binary(est, outcomes, map, false, 0.0);
  return est;
}

SettingEstimates estimate_setting(const ShotHistogram& hist, const MeasurementSetting& s, int n_sites,
                                  const EncodingMap* map) {
  check_width(s, hist.num_qubits);
  if (hist.total_shots == 0) throw std::invalid_argument("histogram has no shots");
  SettingEstimates est{s, hist.total_shots, {}, {}, 0.0, 0};
  const auto outcomes = histogram_weights(hist);
  if (is_binary(s.kind)) {
    if (!map) throw std::invalid_argument("binary setting " + s.label() + " needs an encoding map");
    if (map->num_qubits() != hist.num_qubits) throw std::invalid_argument("histogram width differs from the map");
    accumulate_binary(est, outcomes, *map, true, static_cast<double>(hist.total_shots));
  } else {
    if (n_sites != hist.num_qubits) throw std::invalid_argument("one-hot histogram width differs from N");
    accumulate_original(est, outcomes, n_sites);
    if (is_z_type(s.kind))
      for (const auto& [b, c] : hist.counts)
        if (std::popcount(b) != 1) est.unknown_shots += c;
  }
  return est;
}

Reconstruction reconstruct_profile(std::span<const SettingEstimates> estimates, Protocol protocol, int n_sites,
                                   double eps) {
  if (n_sites < 1) throw std::invalid_argument("number of sites must be >= 1");
  const auto n = static_cast<std::size_t>(n_sites);
  const SettingEstimates* z = nullptr;
  std::map<std::pair<int, int>, double> cos_of, sin_of;
  std::size_t cos_settings = 0, sin_settings = 0;
  Reconstruction r;
  auto& diag = r.diagnostics;
  for (const auto& e : estimates) {
    if (is_binary(e.setting.kind) != (protocol == Protocol::Binary))
      throw std::invalid_argument("setting " + e.setting.label() + " does not belong to the selected protocol");
    if (is_z_type(e.setting.kind)) z = &e;
    if (is_cos_type(e.setting.kind)) ++cos_settings;
    if (is_sin_type(e.setting.kind)) ++sin_settings;
    auto& target = is_cos_type(e.setting.kind) ? cos_of : sin_of;
    if (!is_z_type(e.setting.kind))
      for (const auto& p : e.pairs) target[{p.j, p.k}] = p.value;
    diag.unknown_weight += e.unknown_weight;
    diag.unknown_shots += e.unknown_shots;
  }
  if (!z) throw std::invalid_argument("reconstruction needs the Z-type setting");
  if (z->site_weights.size() != n) throw std::invalid_argument("Z-type estimate does not cover every site");
  const std::size_t need = protocol == Protocol::Original ? 1 : static_cast<std::size_t>(register_width(n_sites));
  if (cos_settings < need || sin_settings < need)
    throw std::invalid_argument("reconstruction needs the complete setting family");

  auto& prof = r.profile;
  prof.magnitudes.resize(n);
  prof.phases.assign(n, 0.0);
  prof.active.assign(n, false);
  prof.component.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    prof.magnitudes[j] = std::sqrt(std::max(0.0, z->site_weights[j]));
    prof.active[j] = prof.magnitudes[j] > eps;
    if (prof.active[j]) r.graph.nodes.push_back(static_cast<int>(j));
    else diag.inactive_sites.push_back(static_cast<int>(j));
  }

  for (const auto& [key, c] : cos_of) {
    const auto [j, k] = key;
    if (!prof.active[static_cast<std::size_t>(j)] || !prof.active[static_cast<std::size_t>(k)]) continue;
    const auto it = sin_of.find(key);
    if (it == sin_of.end()) {
      diag.warnings.push_back("pair (" + std::to_string(j) + ", " + std::to_string(k) + ") has no sine estimate");
      continue;
    }
    const double s = it->second;
    const double weight = c * c + s * s;
    r.graph.edges.push_back({j, k, std::atan2(s, c), weight, false});
    if (std::sqrt(weight) < eps) diag.weak_pairs.emplace_back(j, k);
  }

  // Maximum-weight spanning forest; ties resolved by site indices so the
  // result does not depend on container order.
  std::vector<std::size_t> order(r.graph.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = r.graph.edges[a];
    const auto& eb = r.graph.edges[b];
    if (ea.weight != eb.weight) return ea.weight > eb.weight;
    return std::pair(ea.j, ea.k) < std::pair(eb.j, eb.k);
  });
  DisjointSets sets(n_sites);
  std::vector<std::vector<std::pair<int, double>>> tree(n);
  for (std::size_t idx : order) {
    auto& e = r.graph.edges[idx];
    if (!sets.unite(e.j, e.k)) continue;
    e.in_tree = true;
    tree[static_cast<std::size_t>(e.j)].emplace_back(e.k, e.delta);
    tree[static_cast<std::size_t>(e.k)].emplace_back(e.j, -e.delta);
  }

  int label = 0;
  for (int root : r.graph.nodes) {
    if (prof.component[static_cast<std::size_t>(root)] >= 0) continue;
    if (prof.reference_site < 0) prof.reference_site = root;
    std::queue<int> todo;
    todo.push(root);
    prof.component[static_cast<std::size_t>(root)] = label;
    prof.phases[static_cast<std::size_t>(root)] = 0.0;
    while (!todo.empty()) {
      const int u = todo.front();
      todo.pop();
      for (const auto& [v, d] : tree[static_cast<std::size_t>(u)]) {
        if (prof.component[static_cast<std::size_t>(v)] >= 0) continue;
        prof.component[static_cast<std::size_t>(v)] = label;
        prof.phases[static_cast<std::size_t>(v)] = wrap_phase(prof.phases[static_cast<std::size_t>(u)] + d);
        todo.push(v);
      }
    }
    ++label;
  }
  r.graph.component = prof.component;
  r.graph.num_components = label;
  diag.num_components = label;
  if (label == 0) diag.warnings.push_back("no active site above the threshold");
  if (label > 1)
    diag.warnings.push_back("phase graph has " + std::to_string(label) +
                            " components; phases across components are unresolved");
  if (!diag.weak_pairs.empty())
    diag.warnings.push_back(std::to_string(diag.weak_pairs.size()) + " pair correlators below the threshold");
  if (diag.unknown_shots > 0 || diag.unknown_weight > 1e-12)
    diag.warnings.push_back("outcomes outside the encoded sites were observed");
  return r;
}

double default_threshold(std::optional<std::uint64_t> shots) {
  if (!shots) return 1e-9;
  return std::max(1e-6, 3.0 / std::sqrt(static_cast<double>(*shots)));
}

bool EnergyEstimate::flagged() const {
  return !unresolved_pairs.empty() || reconstruction.diagnostics.num_components != 1;
}

namespace {

EnergyEstimate finish(const SiteHamiltonian& h, std::vector<SettingEstimates> settings, Protocol protocol,
                      const EnergyOptions& options) {
  EnergyEstimate out;
  out.settings = std::move(settings);
  for (const auto& s : out.settings) out.total_shots += s.shots_used;
  out.reconstruction =
      reconstruct_profile(out.settings, protocol, h.size(), options.eps.value_or(default_threshold(options.shots)));
  out.energy = energy_from_profile(h, out.reconstruction.profile);
  out.unresolved_pairs = unresolved_pairs(h, out.reconstruction.profile);
  if (!out.unresolved_pairs.empty()) {
    std::string msg = "unresolved-phase: energy uses zero relative phase for pairs";
    for (const auto& [j, k] : out.unresolved_pairs) msg += " (" + std::to_string(j) + "," + std::to_string(k) + ")";
    out.reconstruction.diagnostics.warnings.push_back(msg);
  }
  return out;
}

}  // namespace

EnergyEstimate estimate_energy_original(const SiteHamiltonian& h, const SparseState& one_hot,
                                        const EnergyOptions& options) {
  const int n = h.size();
  if (one_hot.num_qubits() != n) throw std::invalid_argument("one-hot register width differs from N");
  const auto settings = settings_original(n);
  std::vector<SettingEstimates> est;
  if (!options.shots) {
    for (const auto& s : settings) est.push_back(estimate_setting_exact(one_hot, s));
  } else {
    const StateVector dense = one_hot.to_dense();
    for (std::size_t i = 0; i < settings.size(); ++i) {
      const auto hist = sample_bitstrings(dense, settings[i].bases, *options.shots, derive_seed(options.seed, i),
                                          settings[i].label());
      est.push_back(estimate_setting(hist, settings[i], n));
    }
  }
  return finish(h, std::move(est), Protocol::Original, options);
}

EnergyEstimate estimate_energy_binary(const SiteHamiltonian& h, const StateVector& data, const EncodingMap& map,
                                      const EnergyOptions& options) {
  if (map.num_sites() != h.size()) throw std::invalid_argument("encoding map and Hamiltonian disagree on N");
  if (data.num_qubits() != map.num_qubits()) throw std::invalid_argument("data register width differs from the map");
  const auto settings = settings_binary(map.num_qubits());
  std::vector<SettingEstimates> est;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (!options.shots) {
      est.push_back(estimate_setting_exact(data, settings[i], map));
    } else {
      const auto hist = sample_bitstrings(data, settings[i].bases, *options.shots, derive_seed(options.seed, i),
                                          settings[i].label());
      est.push_back(estimate_setting(hist, settings[i], h.size(), &map));
    }
  }
  return finish(h, std::move(est), Protocol::Binary, options);
}

}  // namespace sesq

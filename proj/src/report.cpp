#include "sesq/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace sesq {

using nlohmann::json;

json to_json(const RunManifest& m) {
  return {{"command", m.command},       {"config_path", m.config_path}, {"config", m.config},
          {"seed", m.seed},             {"version", kVersion},          {"outputs", m.outputs},
          {"threads", m.threads},       {"wall_time_seconds", m.wall_time_seconds},
          {"bit_order", "codewords are big-endian strings: leftmost character is qubit n-1"}};
}

json to_json(const AmplitudeProfile& p, const EncodingMap* map) {
  json sites = json::array();
  for (int j = 0; j < p.size(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    json s{{"site", j}, {"magnitude", p.magnitudes[u]}, {"active", static_cast<bool>(p.active[u])}};
    if (p.active[u]) {
      s["phase"] = p.phases[u];
      s["component"] = p.component[u];
    }
    if (map) s["codeword"] = map->codeword_string(j);
    sites.push_back(std::move(s));
  }
  return {{"n_sites", p.size()}, {"reference_site", p.reference_site}, {"sites", std::move(sites)}};
}

json to_json(const PhaseGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"j", e.j}, {"k", e.k}, {"delta", e.delta}, {"weight", e.weight}, {"in_tree", e.in_tree}});
  return {{"nodes", g.nodes}, {"edges", std::move(edges)}, {"num_components", g.num_components}};
}

json to_json(const ReconstructionDiagnostics& d) {
  json weak = json::array();
  for (const auto& [j, k] : d.weak_pairs) weak.push_back({j, k});
  return {{"inactive_sites", d.inactive_sites}, {"num_components", d.num_components},
          {"weak_pairs", std::move(weak)},      {"unknown_weight", d.unknown_weight},
          {"unknown_shots", d.unknown_shots},   {"warnings", d.warnings}};
}

json to_json(const SettingEstimates& s) {
  json j{{"label", s.setting.label()}, {"bases", s.setting.basis_string()}, {"shots", s.shots_used}};
  if (!s.site_weights.empty()) j["site_weights"] = s.site_weights;
  if (!s.pairs.empty()) {
    json pairs = json::array();
    for (const auto& p : s.pairs) pairs.push_back({{"j", p.j}, {"k", p.k}, {"value", p.value}});
    j["pairs"] = std::move(pairs);
  }
  if (s.unknown_shots || s.unknown_weight > 0) {
    j["unknown_shots"] = s.unknown_shots;
    j["unknown_weight"] = s.unknown_weight;
  }
  return j;
}

json to_json(const EnergyEstimate& e, const EncodingMap* map) {
  json settings = json::array();
  for (const auto& s : e.settings) settings.push_back(to_json(s));
  json unresolved = json::array();
  for (const auto& [j, k] : e.unresolved_pairs) unresolved.push_back({j, k});
  return {{"energy", e.energy},
          {"total_shots", e.total_shots},
          {"flagged", e.flagged()},
          {"unresolved_pairs", std::move(unresolved)},
          {"profile", to_json(e.reconstruction.profile, map)},
          {"phase_graph", to_json(e.reconstruction.graph)},
          {"diagnostics", to_json(e.reconstruction.diagnostics)},
          {"settings", std::move(settings)}};
}

json to_json(const VqeResult& r) {
  json trace = json::array();
  for (const auto& t : r.trace) trace.push_back({t.evaluation, t.energy});
  json j{{"status", to_string(r.status)},
         {"best_energy", r.best_energy},
         {"exact_ground", r.exact_ground},
         {"relative_error", r.relative_error},
         {"best_params", r.best_params},
         {"final_params", r.final_params},
         {"evaluations_used", r.evaluations_used},
         {"shots_per_evaluation", r.shots_per_evaluation},
         {"wall_time_seconds", r.wall_time_seconds},
         {"trace", std::move(trace)}};
  if (r.physical_energy) j["physical_energy"] = *r.physical_energy;
  if (r.physical_relative_error) j["physical_relative_error"] = *r.physical_relative_error;
  if (r.penalty_strength) j["penalty_strength"] = *r.penalty_strength;
  return j;
}

json to_json(const VolumetricReport& r) {
  json j{{"approach", r.approach}, {"width", r.width}, {"depth", r.depth}, {"settings", r.settings},
         {"volume", r.volume},     {"formula", r.formula}};
  if (r.n_sites) {
    j["N"] = r.n_sites;
    j["n"] = r.n;
  }
  return j;
}

json to_json(const AsymptoticTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  const auto ratios = [](const std::vector<SpeedupRow>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back({{"approach", s.approach}, {"ratio", s.ratio}, {"log10_bucket", s.bucket}});
    return out;
  };
  return {{"N", t.n_sites},
          {"n", t.n},
          {"rows", std::move(rows)},
          {"speedup_unit_constants", ratios(t.unit_speedups)},
          {"speedup_constants_free", ratios(t.constants_free_speedups)}};
}

std::string trace_csv(const VqeResult& r) {
  std::string out = "evaluation,energy,best_so_far\n";
  double best = std::numeric_limits<double>::infinity();
  char buf[96];
  for (const auto& t : r.trace) {
    best = std::min(best, t.energy);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", t.evaluation, t.energy, best);
    out += buf;
  }
  return out;
}

}  // namespace sesq

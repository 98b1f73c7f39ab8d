// sesq: command-line front end for generating instances, running VQE,
// reconstructing profiles from measurements, and resource tables.
//
// Exit codes: 0 success, 1 usage or config error, 2 run finished but did not
// converge or its diagnostics were flagged.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <string>

#include "sesq/ansatz.hpp"
#include "sesq/config.hpp"
#include "sesq/hamiltonian_io.hpp"
#include "sesq/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sesq;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int threads = 0;
  std::string output_dir;
};

fs::path output_root(const Globals& g) {
  if (!g.output_dir.empty()) return g.output_dir;
  if (const char* env = std::getenv("SESQ_OUTPUT_DIR"); env && *env) return env;
  return fs::current_path();
}

fs::path resolve_output(const Globals& g, const std::string& name) {
  fs::path p(name);
  if (p.is_relative()) p = output_root(g) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int effective_threads() { return omp_get_max_threads(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string family = "chain";
  int n_sites = 0;
  std::uint64_t seed = 0;
  double t = 1.0;
  double disorder = 0.0;
  double phi = 0.3;
  std::string out = "hamiltonian.json";
};

SiteHamiltonian generate(const json& g) {
  const std::string family = g.value("family", "chain");
  const int n = g.at("n_sites").get<int>();
  if (n < 1) throw UsageError("n_sites must be >= 1");
  const auto seed = g.value("seed", std::uint64_t{0});
  if (family == "chain") return make_chain(n, g.value("t", 1.0), g.value("disorder", 0.0), seed);
  if (family == "random_hermitian") return make_random_hermitian(n, seed);
  if (family == "complex_ring")
    return make_complex_ring(n, g.value("t", 1.0), g.value("phi", 0.3), g.value("disorder", 0.0), seed);
  throw UsageError("unknown family '" + family + "' (expected chain, random_hermitian, complex_ring)");
}

int run_gen(const Globals& g, const GenArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.n_sites < 1) throw UsageError("--n_sites must be >= 1");
  const json gen{{"family", a.family}, {"n_sites", a.n_sites}, {"seed", a.seed},
                 {"t", a.t},           {"disorder", a.disorder}, {"phi", a.phi}};
  const SiteHamiltonian h = generate(gen);
  const fs::path out = resolve_output(g, a.out);
  RunManifest m{"gen", "", gen, a.seed, {out.string()}, effective_threads(), seconds_since(t0)};
  save_hamiltonian(out, h, {{"generator", gen}, {"manifest", to_json(m)}});
  std::cout << "wrote " << out.string() << " (" << a.family << ", N = " << h.size() << ")\n";
  return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string config;
  json overrides = json::object();
};

// Reads a config or a previous report (whose manifest holds the config).
json load_config(const std::string& path) {
  json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("manifest") && doc["manifest"].contains("config"))
    doc = doc["manifest"]["config"];
  // A relative Hamiltonian path is taken relative to the config file.
  if (doc.is_object() && doc.contains("hamiltonian") && doc["hamiltonian"].is_string()) {
    const fs::path hp = doc["hamiltonian"].get<std::string>();
    if (hp.is_relative()) doc["hamiltonian"] = fs::absolute(fs::path(path).parent_path() / hp).lexically_normal().string();
  }
  return doc;
}

SiteHamiltonian hamiltonian_for(const json& cfg) {
  if (cfg.contains("hamiltonian") && cfg.contains("generator"))
    throw UsageError("config keys 'hamiltonian' and 'generator' are mutually exclusive");
  if (cfg.contains("hamiltonian")) {
    if (!cfg["hamiltonian"].is_string()) throw UsageError("config key 'hamiltonian': expected a file path");
    return load_hamiltonian(cfg["hamiltonian"].get<std::string>());
  }
  if (cfg.contains("generator")) {
    const auto& gen = cfg["generator"];
    if (!gen.is_object() || !gen.contains("n_sites") || !gen["n_sites"].is_number_integer())
      throw UsageError("config key 'generator': expected an object with integer 'n_sites'");
    for (const auto& [k, v] : gen.items())
      if (k != "family" && k != "n_sites" && k != "seed" && k != "t" && k != "disorder" && k != "phi")
        throw UsageError("config key 'generator." + k + "': unknown key");
    return generate(gen);
  }
  throw UsageError("config needs 'hamiltonian' (file path) or 'generator'");
}

int run_solve(const Globals& g, const SolveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  json cfg = a.config.empty() ? json::object() : load_config(a.config);
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [k, v] : a.overrides.items()) cfg[k] = v;

  VqeConfig vc;
  try {
    vc = vqe_config_from_json(cfg, {"hamiltonian", "generator", "output", "trace_csv"});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SiteHamiltonian h = hamiltonian_for(cfg);
  try {
    validate_config(vc, h);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const VqeResult r = optimize(h, vc);

  json resolved = to_json(vc);
  for (const char* k : {"hamiltonian", "generator", "output", "trace_csv"})
    if (cfg.contains(k)) resolved[k] = cfg[k];
  const fs::path out = resolve_output(g, cfg.value("output", std::string("solve_report.json")));
  RunManifest m{"solve", a.config, resolved, vc.seed, {out.string()}, effective_threads(), 0.0};
  std::optional<fs::path> csv;
  if (cfg.contains("trace_csv")) {
    csv = resolve_output(g, cfg["trace_csv"].get<std::string>());
    m.outputs.push_back(csv->string());
    write_text(*csv, trace_csv(r));
  }
  m.wall_time_seconds = seconds_since(t0);
  json report = to_json(r);
  report["n_sites"] = h.size();
  report["manifest"] = to_json(m);
  write_text(out, report.dump(2) + "\n");

  std::printf("status %s  best %.12g  exact %.12g  rel.err %.3e  evals %d\n", std::string(to_string(r.status)).c_str(),
              r.best_energy, r.exact_ground, r.relative_error, r.evaluations_used);
  if (r.physical_energy) std::printf("physical-subspace energy %.12g\n", *r.physical_energy);
  std::cout << "wrote " << out.string() << "\n";
  return r.status == VqeStatus::Converged ? 0 : 2;
}

// ---- reconstruct ----------------------------------------------------------

struct ReconstructArgs {
  std::string hamiltonian;
  std::string params;
  std::string amplitudes;
  std::string ansatz = "one_hot_ses";
  std::string protocol;
  std::string shots = "exact";
  std::uint64_t seed = 0;
  std::optional<double> eps;
  std::string out = "reconstruct_report.json";
};

std::vector<double> read_params(const std::string& path) {
  const json doc = read_json_file(path);
  const json& arr = doc.is_object() && doc.contains("params") ? doc["params"]
                    : doc.is_object() && doc.contains("best_params") ? doc["best_params"]
                                                                     : doc;
  if (!arr.is_array()) throw UsageError(path + ": expected an array of angles or {\"params\": [...]}");
  std::vector<double> p;
  for (const auto& v : arr) {
    if (!v.is_number()) throw UsageError(path + ": parameters must be numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

std::vector<Complex> read_amplitudes(const std::string& path) {
  const json doc = read_json_file(path);
  const json& arr = doc.is_object() && doc.contains("amplitudes") ? doc["amplitudes"] : doc;
  if (!arr.is_array()) throw UsageError(path + ": expected {\"amplitudes\": [[re, im], ...]}");
  std::vector<Complex> a;
  for (const auto& v : arr) {
    if (v.is_number()) a.emplace_back(v.get<double>(), 0.0);
    else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      a.emplace_back(v[0].get<double>(), v[1].get<double>());
    else throw UsageError(path + ": each amplitude must be a number or [re, im]");
  }
  double w = 0.0;
  for (const auto& z : a) w += std::norm(z);
  if (w <= 0.0) throw UsageError(path + ": amplitudes are all zero");
  for (auto& z : a) z /= std::sqrt(w);
  return a;
}

int run_reconstruct(const Globals& g, const ReconstructArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.hamiltonian.empty()) throw UsageError("--hamiltonian is required");
  if (a.params.empty() == a.amplitudes.empty()) throw UsageError("give exactly one of --params or --amplitudes");
  const SiteHamiltonian h = load_hamiltonian(a.hamiltonian);
  const int n_sites = h.size();

  EnergyOptions opts;
  if (a.shots != "exact") {
    try {
      const long long s = std::stoll(a.shots);
      if (s < 1) throw std::invalid_argument("");
      opts.shots = static_cast<std::uint64_t>(s);
    } catch (const std::exception&) {
      throw UsageError("--shots must be a positive integer or 'exact'");
    }
  }
  opts.seed = a.seed;
  opts.eps = a.eps;

  // Site amplitudes of the state to measure.
  std::vector<Complex> alpha;
  std::string source;
  if (!a.params.empty()) {
    const auto params = read_params(a.params);
    const AnsatzKind kind = parse_ansatz(a.ansatz);
    if (kind == AnsatzKind::HardwareEfficient) throw UsageError("reconstruct supports one_hot_ses and binary_ses");
    if (static_cast<int>(params.size()) != ses_param_count(n_sites))
      throw UsageError("expected " + std::to_string(ses_param_count(n_sites)) + " parameters for N = " +
                       std::to_string(n_sites) + ", got " + std::to_string(params.size()));
    VqeConfig vc;
    vc.ansatz = kind;
    alpha = ansatz_site_amplitudes(h, vc, params);
    source = a.ansatz;
  } else {
    alpha = read_amplitudes(a.amplitudes);
    if (static_cast<int>(alpha.size()) != n_sites)
      throw UsageError("amplitude file has " + std::to_string(alpha.size()) + " entries but N = " + std::to_string(n_sites));
    source = "amplitudes";
  }

  const std::string protocol =
      !a.protocol.empty() ? a.protocol : (a.ansatz == "binary_ses" && !a.params.empty() ? "binary" : "original");
  EnergyEstimate est;
  std::optional<EncodingMap> map;
  if (protocol == "original") {
    if (n_sites > 64) throw UsageError("original protocol supports N <= 64");
    std::vector<std::pair<BasisIndex, Complex>> terms;
    for (int j = 0; j < n_sites; ++j)
      if (alpha[static_cast<std::size_t>(j)] != Complex{}) terms.emplace_back(BasisIndex{1} << j, alpha[static_cast<std::size_t>(j)]);
    est = estimate_energy_original(h, SparseState::from_terms(n_sites, terms, 1e-8), opts);
  } else if (protocol == "binary") {
    map = EncodingMap::build(n_sites, EncodingMode::Shifted);
    std::vector<Complex> data(std::size_t{1} << map->num_qubits());
    for (int j = 0; j < n_sites; ++j) data[map->codeword(j)] = alpha[static_cast<std::size_t>(j)];
    est = estimate_energy_binary(h, StateVector::from_amplitudes(std::move(data), 1e-8), *map, opts);
  } else {
    throw UsageError("--protocol must be 'original' or 'binary'");
  }

  const double oracle = quadratic_form(h, alpha);
  const fs::path out = resolve_output(g, a.out);
  json cfg{{"hamiltonian", a.hamiltonian}, {"source", source}, {"protocol", protocol},
           {"shots", a.shots},             {"seed", a.seed}};
  if (!a.params.empty()) cfg["params"] = a.params;
  if (!a.amplitudes.empty()) cfg["amplitudes"] = a.amplitudes;
  if (a.eps) cfg["eps"] = *a.eps;
  RunManifest m{"reconstruct", "", cfg, a.seed, {out.string()}, effective_threads(), seconds_since(t0)};
  json report = to_json(est, map ? &*map : nullptr);
  report["protocol"] = protocol;
  report["oracle_energy"] = oracle;
  report["manifest"] = to_json(m);
  write_text(out, report.dump(2) + "\n");

  std::printf("energy %.15g  oracle %.15g  |diff| %.3e  shots %llu\n", est.energy, oracle, std::abs(est.energy - oracle),
              static_cast<unsigned long long>(est.total_shots));
  for (const auto& w : est.reconstruction.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << out.string() << "\n";
  return est.flagged() ? 2 : 0;
}

// ---- resources ------------------------------------------------------------

struct ResourceArgs {
  std::int64_t n_sites = 0;
  bool measured = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string circuit_out;
};

int run_resources(const Globals& g, const ResourceArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.n_sites < 2) throw UsageError("--n_sites must be >= 2");
  const AsymptoticTable t = asymptotic_table(a.n_sites);
  std::cout << format_table(t);
  json report = to_json(t);

  if (a.measured || !a.circuit_out.empty()) {
    if (a.n_sites > 4096) throw UsageError("measured circuits are limited to N <= 4096");
    const int n_sites = static_cast<int>(a.n_sites);
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> angle(-3.141592653589793, 3.141592653589793);
    std::vector<double> params(static_cast<std::size_t>(ses_param_count(n_sites)));
    for (auto& p : params) p = angle(rng);
    const auto map = EncodingMap::build(n_sites);
    const Circuit binary = build_binary_ses_circuit(params, map);
    json measured = json::array();
    std::vector<VolumetricReport> rows;
    if (n_sites <= 64) rows.push_back(volumetric_cost(build_ses_circuit(params, n_sites), 3, "original (measured)"));
    rows.push_back(volumetric_cost(binary, 2 * map.num_qubits() + 1, "gray_ses (measured)"));
    std::cout << "\nmeasured circuits:\n";
    for (const auto& r : rows) {
      const auto counts = circuit_metadata(r.approach.rfind("original", 0) == 0 ? build_ses_circuit(params, n_sites) : binary);
      std::printf("  %-22s width %3.0f  depth %8.0f  settings %3.0f  volume %.6e  cnots %llu\n", r.approach.c_str(),
                  r.width, r.depth, r.settings, r.volume, static_cast<unsigned long long>(counts.cnot_count));
      json row = to_json(r);
      row["cnot_count"] = counts.cnot_count;
      measured.push_back(std::move(row));
    }
    report["measured"] = std::move(measured);
    if (!a.circuit_out.empty()) {
      const fs::path p = resolve_output(g, a.circuit_out);
      write_text(p, to_text(binary));
      std::cout << "wrote " << p.string() << "\n";
    }
  }
  if (!a.out.empty()) {
    const fs::path p = resolve_output(g, a.out);
    json cfg{{"n_sites", a.n_sites}, {"measured", a.measured}, {"seed", a.seed}};
    RunManifest m{"resources", "", cfg, a.seed, {p.string()}, effective_threads(), seconds_since(t0)};
    report["manifest"] = to_json(m);
    write_text(p, report.dump(2) + "\n");
    std::cout << "wrote " << p.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sesq: single-excitation subspace VQE simulator"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--threads", globals.threads, "worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--output-dir", globals.output_dir, "directory for relative output paths (env SESQ_OUTPUT_DIR)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a Hamiltonian instance");
  gen_cmd->add_option("--family", gen.family, "chain | random_hermitian | complex_ring");
  gen_cmd->add_option("--n_sites", gen.n_sites, "number of sites")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--t", gen.t, "hopping amplitude (chain, complex_ring)");
  gen_cmd->add_option("--disorder", gen.disorder, "on-site disorder strength");
  gen_cmd->add_option("--phi", gen.phi, "hopping phase (complex_ring)");
  gen_cmd->add_option("--out", gen.out, "output file");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "run VQE from a config file; flags override config keys");
  solve_cmd->add_option("--config", solve.config, "JSON config, or a previous report to rerun");
  std::string o_hamiltonian, o_ansatz, o_protocol, o_shots, o_optimizer, o_prep, o_output, o_trace;
  std::optional<std::int64_t> o_max_evals, o_layers;
  std::optional<std::uint64_t> o_seed;
  std::optional<double> o_cp;
  solve_cmd->add_option("--hamiltonian", o_hamiltonian);
  solve_cmd->add_option("--ansatz", o_ansatz);
  solve_cmd->add_option("--protocol", o_protocol);
  solve_cmd->add_option("--shots", o_shots, "integer or 'exact'");
  solve_cmd->add_option("--optimizer", o_optimizer, "simplex | spsa | sinusoidal");
  solve_cmd->add_option("--max_evaluations", o_max_evals);
  solve_cmd->add_option("--seed", o_seed);
  solve_cmd->add_option("--layers", o_layers);
  solve_cmd->add_option("--prep", o_prep);
  solve_cmd->add_option("--c_p", o_cp, "penalty strength");
  solve_cmd->add_option("--output", o_output);
  solve_cmd->add_option("--trace_csv", o_trace);

  ReconstructArgs rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "measure a state and rebuild its profile and energy");
  rec_cmd->add_option("--hamiltonian", rec.hamiltonian, "Hamiltonian file")->required();
  rec_cmd->add_option("--params", rec.params, "ansatz parameter file");
  rec_cmd->add_option("--amplitudes", rec.amplitudes, "per-site amplitude file");
  rec_cmd->add_option("--ansatz", rec.ansatz, "one_hot_ses | binary_ses (with --params)");
  rec_cmd->add_option("--protocol", rec.protocol, "original | binary");
  rec_cmd->add_option("--shots", rec.shots, "shots per setting or 'exact'");
  rec_cmd->add_option("--seed", rec.seed);
  rec_cmd->add_option("--eps", rec.eps, "activity threshold");
  rec_cmd->add_option("--out", rec.out);

  ResourceArgs res;
  auto* res_cmd = app.add_subcommand("resources", "volumetric cost table");
  res_cmd->add_option("--n_sites", res.n_sites, "number of sites")->required();
  res_cmd->add_flag("--measured", res.measured, "also build and measure concrete ansatz circuits");
  res_cmd->add_option("--seed", res.seed, "seed for the measured circuits' parameters");
  res_cmd->add_option("--out", res.out, "JSON report path");
  res_cmd->add_option("--circuit_out", res.circuit_out, "write the binary ansatz circuit in text form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (globals.threads > 0) omp_set_num_threads(globals.threads);

  try {
    if (*gen_cmd) return run_gen(globals, gen);
    if (*solve_cmd) {
      const auto put = [&](const char* key, const std::string& v) {
        if (!v.empty()) solve.overrides[key] = v;
      };
      put("hamiltonian", o_hamiltonian);
      put("ansatz", o_ansatz);
      put("protocol", o_protocol);
      put("optimizer", o_optimizer);
      put("prep", o_prep);
      put("output", o_output);
      put("trace_csv", o_trace);
      if (!o_shots.empty()) {
        if (o_shots == "exact") solve.overrides["shots"] = "exact";
        else {
          try {
            solve.overrides["shots"] = std::stoll(o_shots);
          } catch (const std::exception&) {
            throw UsageError("--shots must be an integer or 'exact'");
          }
        }
      }
      if (o_max_evals) solve.overrides["max_evaluations"] = *o_max_evals;
      if (o_seed) solve.overrides["seed"] = *o_seed;
      if (o_layers) solve.overrides["layers"] = *o_layers;
      if (o_cp) solve.overrides["penalty"] = {{"c_p", *o_cp}};
      return run_solve(globals, solve);
    }
    if (*rec_cmd) return run_reconstruct(globals, rec);
    if (*res_cmd) return run_resources(globals, res);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

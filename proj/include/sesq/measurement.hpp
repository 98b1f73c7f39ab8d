#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sesq/encoding.hpp"
#include "sesq/hamiltonian.hpp"
#include "sesq/sampling.hpp"
#include "sesq/sparse_state.hpp"

namespace sesq {

enum class Protocol { Original, Binary };

enum class SettingKind { MZ, MXX, MXY, BZ, BX, BY };

struct MeasurementSetting {
  SettingKind kind = SettingKind::MZ;
  /// Flip position for BX/BY, -1 otherwise.
  int position = -1;
  std::vector<MeasureBasis> bases;

  /// "M_Z", "M_XX", "M_XY", "BZ", "BX(l)", "BY(l)".
  std::string label() const;
  /// One character per qubit, qubit 0 first.
  std::string basis_string() const;
};

/// [M_Z, M_XX, M_XY] on an N-qubit one-hot register.
std::vector<MeasurementSetting> settings_original(int n_sites);
/// [BZ, BX(0..n-1), BY(0..n-1)] on an n-qubit data register.
std::vector<MeasurementSetting> settings_binary(int n);

/// Correlator estimate for a site pair j < k. For cosine-type settings
/// (M_XX, BX) the value estimates 2|a_j||a_k| cos(theta_k - theta_j); for
/// sine-type settings (M_XY, BY) it estimates 2|a_j||a_k| sin(theta_k - theta_j).
struct PairEstimate {
  int j = 0;
  int k = 0;
  double value = 0.0;
};

struct SettingEstimates {
  MeasurementSetting setting;
  /// 0 in exact mode.
  std::uint64_t shots_used = 0;
  /// Z-type settings: |a_j|^2 estimates per site.
  std::vector<double> site_weights;
  std::vector<PairEstimate> pairs;
  /// Probability mass (exact) or shot count (sampled) on outcomes that belong
  /// to no encoded site; binary protocol only.
  double unknown_weight = 0.0;
  std::uint64_t unknown_shots = 0;
};

/// Exact one-hot estimates from analytic Pauli expectations.
SettingEstimates estimate_setting_exact(const SparseState& one_hot, const MeasurementSetting& s);
/// Exact binary estimates from the rotated-basis outcome distribution of the
/// data register, using the same estimator as the sampled path.
SettingEstimates estimate_setting_exact(const StateVector& data, const MeasurementSetting& s, const EncodingMap& map);
/// Estimates from a histogram. `map` is required for the binary settings.
SettingEstimates estimate_setting(const ShotHistogram& hist, const MeasurementSetting& s, int n_sites,
                                  const EncodingMap* map = nullptr);

struct PhaseEdge {
  int j = 0;
  int k = 0;
  /// theta_k - theta_j in (-pi, pi].
  double delta = 0.0;
  double weight = 0.0;
  bool in_tree = false;
};

struct PhaseGraph {
  std::vector<int> nodes;
  std::vector<PhaseEdge> edges;
  /// Component label per site, -1 for inactive sites.
  std::vector<int> component;
  int num_components = 0;
};

struct ReconstructionDiagnostics {
  std::vector<int> inactive_sites;
  int num_components = 0;
  /// Active pairs whose correlator magnitude was below the threshold, so the
  /// arctangent was poorly conditioned.
  std::vector<std::pair<int, int>> weak_pairs;
  double unknown_weight = 0.0;
  std::uint64_t unknown_shots = 0;
  std::vector<std::string> warnings;
};

struct Reconstruction {
  AmplitudeProfile profile;
  PhaseGraph graph;
  ReconstructionDiagnostics diagnostics;
};

/// Magnitudes from the Z-type setting, phases propagated over a maximum-weight
/// spanning tree of the measured pairs, per connected component.
Reconstruction reconstruct_profile(std::span<const SettingEstimates> estimates, Protocol protocol, int n_sites,
                                   double eps);

struct EnergyOptions {
  /// Shots per setting; nullopt means exact mode.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  /// Activity threshold; nullopt picks 1e-9 (exact) or max(1e-6, 3/sqrt(shots)).
  std::optional<double> eps;
};

double default_threshold(std::optional<std::uint64_t> shots);

struct EnergyEstimate {
  double energy = 0.0;
  Reconstruction reconstruction;
  std::vector<SettingEstimates> settings;
  /// Hamiltonian pairs whose phase could not be resolved.
  std::vector<std::pair<int, int>> unresolved_pairs;
  std::uint64_t total_shots = 0;
  bool flagged() const;
};

/// Measures every setting of `protocol`, reconstructs the profile, and
/// evaluates the energy functional. Setting i draws with seed
/// derive_seed(options.seed, i).
EnergyEstimate estimate_energy_original(const SiteHamiltonian& h, const SparseState& one_hot,
                                        const EnergyOptions& options);
EnergyEstimate estimate_energy_binary(const SiteHamiltonian& h, const StateVector& data, const EncodingMap& map,
                                      const EnergyOptions& options);

}  // namespace sesq

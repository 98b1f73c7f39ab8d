#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sesq/ansatz.hpp"
#include "sesq/hamiltonian.hpp"
#include "sesq/measurement.hpp"

namespace sesq {

enum class AnsatzKind { OneHotSes, BinarySes, HardwareEfficient };
enum class CostProtocol { Original, Binary, ExactOperator };
enum class OptimizerKind { Simplex, Spsa, Sinusoidal };
enum class VqeStatus { Converged, BudgetExhausted };

std::string_view to_string(AnsatzKind k);
std::string_view to_string(CostProtocol p);
std::string_view to_string(OptimizerKind o);
std::string_view to_string(VqeStatus s);
AnsatzKind parse_ansatz(std::string_view s);
CostProtocol parse_protocol(std::string_view s);
OptimizerKind parse_optimizer(std::string_view s);

struct SimplexOptions {
  /// Edge length of the starting simplex, radians.
  double initial_step = 0.6;
  /// Restart around the best vertex once the simplex spread falls below this.
  double collapse_tolerance = 1e-10;
};

struct SpsaOptions {
  double a = 1.0;
  double c = 0.15;
  double alpha = 0.602;
  double gamma = 0.101;
  /// Stability offset as a fraction of the evaluation budget.
  double stability_fraction = 0.1;
};

struct VqeConfig {
  AnsatzKind ansatz = AnsatzKind::OneHotSes;
  CostProtocol protocol = CostProtocol::ExactOperator;
  /// Shots per setting per evaluation; nullopt = exact.
  std::optional<std::uint64_t> shots;
  OptimizerKind optimizer = OptimizerKind::Simplex;
  int max_evaluations = 5000;
  std::uint64_t seed = 0;
  /// Hardware-efficient ansatz only. Falls back to default_penalty() when
  /// the site count is not a power of two and no penalty is given.
  std::optional<PenaltyConfig> penalty;
  int layers = 2;
  PrepStrategy prep = PrepStrategy::Incremental;
  /// Plateau rule: stop once the best energy improved by less than
  /// `plateau_tolerance` over `plateau_window_per_param * dim` evaluations.
  double plateau_tolerance = 1e-9;
  int plateau_window_per_param = 50;
  SimplexOptions simplex;
  SpsaOptions spsa;
};

/// Throws std::invalid_argument for ansatz/protocol pairs that cannot be
/// measured together or for out-of-range settings.
void validate_config(const VqeConfig& cfg, const SiteHamiltonian& h);

int parameter_count(const VqeConfig& cfg, int n_sites);

struct TracePoint {
  int evaluation = 0;
  double energy = 0.0;
};

struct VqeResult {
  std::vector<double> best_params;
  /// Last SPSA iterate (equal to best_params for the simplex). Under shot
  /// noise the lowest recorded energy is biased low, so this is the point to
  /// re-evaluate.
  std::vector<double> final_params;
  double best_energy = 0.0;
  std::vector<TracePoint> trace;
  double exact_ground = 0.0;
  double relative_error = 0.0;
  int evaluations_used = 0;
  double wall_time_seconds = 0.0;
  VqeStatus status = VqeStatus::BudgetExhausted;
  /// Hardware-efficient runs: Rayleigh quotient of h over the first N
  /// amplitudes of the best state.
  std::optional<double> physical_energy;
  std::optional<double> physical_relative_error;
  /// Penalty strength actually used, if any.
  std::optional<double> penalty_strength;
  std::uint64_t shots_per_evaluation = 0;
};

/// Cost for one parameter vector. Deterministic in (config.seed, evaluation).
double evaluate_cost(const SiteHamiltonian& h, const VqeConfig& config, std::span<const double> params,
                     std::uint64_t evaluation = 0);

/// Per-site amplitudes of the ansatz state (first N entries of the padded
/// register for the hardware-efficient ansatz).
std::vector<Complex> ansatz_site_amplitudes(const SiteHamiltonian& h, const VqeConfig& config,
                                            std::span<const double> params);

VqeResult optimize(const SiteHamiltonian& h, const VqeConfig& config);

/// Relative error convention shared by reports and tests.
inline double relative_error(double energy, double exact) {
  const double scale = std::abs(exact) > 1e-12 ? std::abs(exact) : 1e-12;
  return (energy - exact) / scale;
}

}  // namespace sesq

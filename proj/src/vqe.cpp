#include "sesq/vqe.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sesq {

namespace {

// Streams of the seed tree that are not evaluation indices.
constexpr std::uint64_t kInitStream = 0x8000000000000000ULL;
constexpr std::uint64_t kSpsaStream = 0x8000000000000001ULL;

template <class E>
E parse_enum(std::string_view s, std::initializer_list<std::pair<std::string_view, E>> names, const char* what) {
  for (const auto& [n, e] : names)
    if (n == s) return e;
  std::string allowed;
  for (const auto& [n, e] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
  throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(s) + "' (expected " + allowed + ")");
}

struct Prepared {
  // Hamiltonian the cost is measured against (penalty-extended for the
  // hardware-efficient ansatz when N is not a power of two).
  SiteHamiltonian target;
  std::optional<EncodingMap> map;
  std::optional<double> penalty;
};

Prepared prepare(const SiteHamiltonian& h, const VqeConfig& cfg) {
  switch (cfg.ansatz) {
    case AnsatzKind::OneHotSes: return {h, std::nullopt, std::nullopt};
    case AnsatzKind::BinarySes: return {h, EncodingMap::build(h.size(), EncodingMode::Shifted), std::nullopt};
    case AnsatzKind::HardwareEfficient: {
      const int n = register_width(h.size());
      const int dim = 1 << n;
      if (dim == h.size() && !cfg.penalty) return {h, EncodingMap::build(dim, EncodingMode::Plain), std::nullopt};
      const PenaltyConfig p = cfg.penalty.value_or(default_penalty(h, n));
      return {extend_with_penalty(h, {p.c_p, n}), EncodingMap::build(dim, EncodingMode::Plain), p.c_p};
    }
  }
  throw std::logic_error("unhandled ansatz kind");
}

StateVector binary_data_state(const Circuit& c, const EncodingMap& map) {
  const StateVector full = run_dense(c);
  const BinaryLayout lay = binary_layout(map);
  return restrict_to_register(full, lay.data_offset, lay.data_width);
}

std::vector<Complex> amplitudes_of(const StateVector& data, const EncodingMap& map) {
  std::vector<Complex> out(static_cast<std::size_t>(map.num_sites()));
  for (int k = 0; k < map.num_sites(); ++k) out[static_cast<std::size_t>(k)] = data.amplitude(map.codeword(k));
  return out;
}

double cost(const Prepared& prep, const VqeConfig& cfg, std::span<const double> params, std::uint64_t evaluation) {
  const EnergyOptions opts{cfg.shots, derive_seed(cfg.seed, evaluation), std::nullopt};
  const int n_sites = prep.target.size();
  switch (cfg.ansatz) {
    case AnsatzKind::OneHotSes: {
      const SparseState s = run_sparse(build_ses_circuit(params, n_sites));
      if (cfg.protocol == CostProtocol::ExactOperator) return quadratic_form(prep.target, one_hot_amplitudes(s));
      return estimate_energy_original(prep.target, s, opts).energy;
    }
    case AnsatzKind::BinarySes: {
      const StateVector data = binary_data_state(build_binary_ses_circuit(params, *prep.map, cfg.prep), *prep.map);
      if (cfg.protocol == CostProtocol::ExactOperator) return quadratic_form(prep.target, amplitudes_of(data, *prep.map));
      return estimate_energy_binary(prep.target, data, *prep.map, opts).energy;
    }
    case AnsatzKind::HardwareEfficient: {
      const StateVector data = run_dense(build_hardware_efficient_circuit(prep.map->num_qubits(), cfg.layers, params));
      if (cfg.protocol == CostProtocol::ExactOperator) return quadratic_form(prep.target, amplitudes_of(data, *prep.map));
      return estimate_energy_binary(prep.target, data, *prep.map, opts).energy;
    }
  }
  throw std::logic_error("unhandled ansatz kind");
}

// Records every evaluation, tracks the best point, and decides when to stop.
// Exact costs plateau when the best energy stops improving. Shot-noise costs
// compare the mean energy of consecutive windows instead, since the minimum
// of noisy samples keeps drifting down on luck alone.
class Tracker {
 public:
  Tracker(std::function<double(std::span<const double>, std::uint64_t)> f, int budget, std::size_t dim,
          const VqeConfig& cfg)
      : f_(std::move(f)),
        budget_(budget),
        window_(std::max<std::size_t>(1, dim * static_cast<std::size_t>(cfg.plateau_window_per_param))),
        tol_(cfg.plateau_tolerance),
        noisy_(cfg.shots.has_value()) {}

  double operator()(std::span<const double> x) {
    const int index = static_cast<int>(trace.size());
    const double e = f_(x, static_cast<std::uint64_t>(index));
    trace.push_back({index, e});
    if (e < best) {
      best = e;
      best_x.assign(x.begin(), x.end());
    }
    if (noisy_) {
      if (trace.size() % window_ == 0 && trace.size() >= 2 * window_) plateau = windows_flat();
      return e;
    }
    if (best < reference_ - tol_ || trace.size() == 1) {
      reference_ = best;
      reference_index_ = index;
    }
    if (static_cast<std::size_t>(index - reference_index_) >= window_) plateau = true;
    return e;
  }

  bool done() const { return plateau || static_cast<int>(trace.size()) >= budget_; }
  bool noisy() const { return noisy_; }

  std::vector<TracePoint> trace;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  /// Where the optimizer itself ended up; differs from best_x under shot noise.
  std::vector<double> final_x;
  bool plateau = false;

 private:
  // Mean of the last window against the one before, with two standard
  // errors of slack.
  bool windows_flat() const {
    auto stats = [&](std::size_t begin) {
      double m = 0, v = 0;
      for (std::size_t i = begin; i < begin + window_; ++i) m += trace[i].energy;
      m /= static_cast<double>(window_);
      for (std::size_t i = begin; i < begin + window_; ++i) v += (trace[i].energy - m) * (trace[i].energy - m);
      return std::pair{m, v / static_cast<double>(std::max<std::size_t>(1, window_ - 1))};
    };
    const auto [m_prev, v_prev] = stats(trace.size() - 2 * window_);
    const auto [m_last, v_last] = stats(trace.size() - window_);
    const double se = std::sqrt((v_prev + v_last) / static_cast<double>(window_));
    return m_prev - m_last < tol_ + 2 * se;
  }

  std::function<double(std::span<const double>, std::uint64_t)> f_;
  int budget_;
  std::size_t window_;
  double tol_;
  bool noisy_;
  double reference_ = std::numeric_limits<double>::infinity();
  int reference_index_ = 0;
};

using Point = std::vector<double>;

void nelder_mead(Tracker& track, Point start, const SimplexOptions& opt) {
  const std::size_t n = start.size();
  const double dn = static_cast<double>(n);
  // Dimension-adaptive coefficients.
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 1.0 / (2.0 * dn), delta = 1.0 - 1.0 / dn;

  std::vector<Point> xs;
  std::vector<double> fs;
  const auto build = [&](const Point& base, double step) {
    xs.assign(1, base);
    fs.assign(1, track(base));
    for (std::size_t i = 0; i < n && !track.done(); ++i) {
      Point p = base;
      p[i] += step;
      fs.push_back(track(p));
      xs.push_back(std::move(p));
    }
  };
  build(start, opt.initial_step);
  int restarts = 0;

  const auto combine = [&](const Point& a, const Point& b, double t) {
    Point r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  while (!track.done()) {
    if (xs.size() < n + 1) break;
    std::vector<std::size_t> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<Point> sx;
    std::vector<double> sf;
    for (auto i : order) {
      sx.push_back(std::move(xs[i]));
      sf.push_back(fs[i]);
    }
    xs = std::move(sx);
    fs = std::move(sf);

    double spread = fs[n] - fs[0];
    double size = 0.0;
    for (std::size_t v = 1; v <= n; ++v)
      for (std::size_t i = 0; i < n; ++i) size = std::max(size, std::abs(xs[v][i] - xs[0][i]));
    if (spread < opt.collapse_tolerance && size < 1e-6) {
      // Restart from the best point; alternate the step so a restart does not
      // replay the previous simplex exactly.
      ++restarts;
      build(xs[0], opt.initial_step * (restarts % 2 ? 0.5 : 1.0));
      continue;
    }

    Point centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += xs[v][i] / dn;

    const Point xr = combine(centroid, xs[n], -alpha);
    const double fr = track(xr);
    if (track.done()) break;
    if (fr < fs[0]) {
      const Point xe = combine(centroid, xr, beta);
      const double fe = track(xe);
      if (fe < fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
      continue;
    }
    if (fr < fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
      continue;
    }
    const bool outside = fr < fs[n];
    const Point xc = outside ? combine(centroid, xr, gamma) : combine(centroid, xs[n], gamma);
    const double fc = track(xc);
    if ((outside && fc <= fr) || (!outside && fc < fs[n])) {
      xs[n] = xc;
      fs[n] = fc;
      continue;
    }
    for (std::size_t v = 1; v <= n && !track.done(); ++v) {
      xs[v] = combine(xs[0], xs[v], delta);
      fs[v] = track(xs[v]);
    }
  }
}

void spsa(Tracker& track, Point x, const SpsaOptions& opt, int budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const double stability = opt.stability_fraction * budget / 2.0;
  const std::size_t n = x.size();
  for (int k = 0; !track.done(); ++k) {
    const double ak = opt.a / std::pow(k + 1 + stability, opt.alpha);
    const double ck = opt.c / std::pow(k + 1, opt.gamma);
    Point delta(n), plus(n), minus(n);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      plus[i] = x[i] + ck * delta[i];
      minus[i] = x[i] - ck * delta[i];
    }
    const double fp = track(plus);
    if (track.done()) break;
    const double fm = track(minus);
    const double g = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * g * delta[i];
  }
  track.final_x = x;
}

// Every ansatz here makes the cost a trigonometric polynomial of degree <= 2
// in each single parameter. Five equispaced samples pin it down exactly, so
// each coordinate can be moved straight to its one-dimensional minimum.
void sinusoidal_sweeps(Tracker& track, Point x) {
  constexpr int kSamples = 5;
  const double two_pi = 2.0 * std::numbers::pi;
  double f0 = track(x);
  while (!track.done()) {
    for (std::size_t i = 0; i < x.size() && !track.done(); ++i) {
      const double t0 = x[i];
      std::array<double, kSamples> f{f0};
      for (int m = 1; m < kSamples && !track.done(); ++m) {
        x[i] = t0 + two_pi * m / kSamples;
        f[static_cast<std::size_t>(m)] = track(x);
      }
      if (track.done()) break;
      // Coefficients of a + sum_k (b_k cos k s + c_k sin k s), s = theta - t0.
      double a = 0, b[3] = {}, c[3] = {};
      for (int m = 0; m < kSamples; ++m) {
        const double s = two_pi * m / kSamples, v = f[static_cast<std::size_t>(m)];
        a += v / kSamples;
        for (int k = 1; k <= 2; ++k) {
          b[k] += 2.0 * v * std::cos(k * s) / kSamples;
          c[k] += 2.0 * v * std::sin(k * s) / kSamples;
        }
      }
      const auto model = [&](double s) { return a + b[1] * std::cos(s) + c[1] * std::sin(s) + b[2] * std::cos(2 * s) + c[2] * std::sin(2 * s); };
      const auto d1 = [&](double s) { return -b[1] * std::sin(s) + c[1] * std::cos(s) - 2 * b[2] * std::sin(2 * s) + 2 * c[2] * std::cos(2 * s); };
      const auto d2 = [&](double s) { return -b[1] * std::cos(s) - c[1] * std::sin(s) - 4 * b[2] * std::cos(2 * s) - 4 * c[2] * std::sin(2 * s); };
      double best_s = 0.0;
      for (int g = 1; g < 64; ++g)
        if (model(two_pi * g / 64) < model(best_s)) best_s = two_pi * g / 64;
      for (int it = 0; it < 20; ++it) {
        const double h = d2(best_s);
        if (!(h > 0)) break;
        const double next = best_s - d1(best_s) / h;
        if (!(model(next) <= model(best_s))) break;
        best_s = next;
      }
      x[i] = std::remainder(t0 + best_s, two_pi);
      // The fit is exact without shot noise, so the new value needs no
      // separate evaluation until the sweep ends.
      f0 = track.noisy() ? track(x) : model(best_s);
    }
    if (!track.noisy() && !track.done()) f0 = track(x);
  }
  track.final_x = x;
}

}  // namespace

std::string_view to_string(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::OneHotSes: return "one_hot_ses";
    case AnsatzKind::BinarySes: return "binary_ses";
    case AnsatzKind::HardwareEfficient: return "hardware_efficient";
  }
  return {};
}

std::string_view to_string(CostProtocol p) {
  switch (p) {
    case CostProtocol::Original: return "original";
    case CostProtocol::Binary: return "binary";
    case CostProtocol::ExactOperator: return "exact_operator";
  }
  return {};
}

std::string_view to_string(OptimizerKind o) {
  switch (o) {
    case OptimizerKind::Simplex: return "simplex";
    case OptimizerKind::Spsa: return "spsa";
    case OptimizerKind::Sinusoidal: return "sinusoidal";
  }
  return {};
}

std::string_view to_string(VqeStatus s) { return s == VqeStatus::Converged ? "converged" : "budget_exhausted"; }

AnsatzKind parse_ansatz(std::string_view s) {
  return parse_enum<AnsatzKind>(s,
                                {{"one_hot_ses", AnsatzKind::OneHotSes},
                                 {"binary_ses", AnsatzKind::BinarySes},
                                 {"hardware_efficient", AnsatzKind::HardwareEfficient}},
                                "ansatz");
}

CostProtocol parse_protocol(std::string_view s) {
  return parse_enum<CostProtocol>(s,
                                  {{"original", CostProtocol::Original},
                                   {"binary", CostProtocol::Binary},
                                   {"exact_operator", CostProtocol::ExactOperator}},
                                  "protocol");
}

OptimizerKind parse_optimizer(std::string_view s) {
  return parse_enum<OptimizerKind>(s, {{"simplex", OptimizerKind::Simplex}, {"spsa", OptimizerKind::Spsa}, {"sinusoidal", OptimizerKind::Sinusoidal}},
                                   "optimizer");
}

void validate_config(const VqeConfig& cfg, const SiteHamiltonian& h) {
  if (cfg.protocol == CostProtocol::Original && cfg.ansatz != AnsatzKind::OneHotSes)
    throw std::invalid_argument("protocol 'original' needs ansatz 'one_hot_ses'");
  if (cfg.protocol == CostProtocol::Binary && cfg.ansatz == AnsatzKind::OneHotSes)
    throw std::invalid_argument("protocol 'binary' needs ansatz 'binary_ses' or 'hardware_efficient'");
  if (cfg.shots && *cfg.shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (cfg.shots && cfg.protocol == CostProtocol::ExactOperator)
    throw std::invalid_argument("protocol 'exact_operator' does not take shots");
  if (cfg.max_evaluations < 1) throw std::invalid_argument("max_evaluations must be >= 1");
  if (cfg.layers < 0) throw std::invalid_argument("layers must be >= 0");
  if (cfg.plateau_window_per_param < 1) throw std::invalid_argument("plateau_window_per_param must be >= 1");
  if (cfg.penalty && !(cfg.penalty->c_p > 0)) throw std::invalid_argument("penalty C_p must be positive");
  if (cfg.ansatz == AnsatzKind::OneHotSes && cfg.shots && h.size() > kMaxDenseQubits)
    throw std::invalid_argument("sampled one-hot measurement limited to " + std::to_string(kMaxDenseQubits) + " sites");
  if (cfg.ansatz == AnsatzKind::OneHotSes && h.size() > 64)
    throw std::invalid_argument("one-hot register limited to 64 sites");
}

int parameter_count(const VqeConfig& cfg, int n_sites) {
  if (cfg.ansatz == AnsatzKind::HardwareEfficient)
    return hardware_efficient_param_count(register_width(n_sites), cfg.layers);
  return ses_param_count(n_sites);
}

double evaluate_cost(const SiteHamiltonian& h, const VqeConfig& config, std::span<const double> params,
                     std::uint64_t evaluation) {
  validate_config(config, h);
  return cost(prepare(h, config), config, params, evaluation);
}

std::vector<Complex> ansatz_site_amplitudes(const SiteHamiltonian& h, const VqeConfig& config,
                                            std::span<const double> params) {
  const Prepared prep = prepare(h, config);
  std::vector<Complex> a;
  switch (config.ansatz) {
    case AnsatzKind::OneHotSes: a = one_hot_amplitudes(run_sparse(build_ses_circuit(params, h.size()))); break;
    case AnsatzKind::BinarySes:
      a = amplitudes_of(binary_data_state(build_binary_ses_circuit(params, *prep.map, config.prep), *prep.map),
                        *prep.map);
      break;
    case AnsatzKind::HardwareEfficient: {
      const auto data = run_dense(build_hardware_efficient_circuit(prep.map->num_qubits(), config.layers, params));
      a.assign(data.amplitudes().begin(), data.amplitudes().begin() + h.size());
      break;
    }
  }
  return a;
}

VqeResult optimize(const SiteHamiltonian& h, const VqeConfig& config) {
  validate_config(config, h);
  const auto start_time = std::chrono::steady_clock::now();
  const Prepared prep = prepare(h, config);
  const std::size_t dim = static_cast<std::size_t>(parameter_count(config, h.size()));

  Tracker track([&](std::span<const double> x, std::uint64_t idx) { return cost(prep, config, x, idx); },
                config.max_evaluations, dim, config);

  std::mt19937_64 init_rng(derive_seed(config.seed, kInitStream));
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Point x0(dim);
  for (auto& v : x0) v = angle(init_rng);

  if (dim == 0) {
    track(x0);
    track.plateau = true;
  } else if (config.optimizer == OptimizerKind::Simplex) {
    nelder_mead(track, x0, config.simplex);
  } else if (config.optimizer == OptimizerKind::Sinusoidal) {
    sinusoidal_sweeps(track, x0);
  } else {
    spsa(track, x0, config.spsa, config.max_evaluations, derive_seed(config.seed, kSpsaStream));
  }

  VqeResult r;
  r.best_params = track.best_x;
  r.final_params = track.final_x.empty() ? track.best_x : track.final_x;
  r.best_energy = track.best;
  r.trace = std::move(track.trace);
  r.evaluations_used = static_cast<int>(r.trace.size());
  r.status = track.plateau ? VqeStatus::Converged : VqeStatus::BudgetExhausted;
  r.exact_ground = ground_energy(h);
  r.relative_error = relative_error(r.best_energy, r.exact_ground);
  r.penalty_strength = prep.penalty;
  if (config.shots) {
    const std::size_t settings = config.ansatz == AnsatzKind::OneHotSes
                                     ? 3
                                     : static_cast<std::size_t>(2 * prep.map->num_qubits() + 1);
    r.shots_per_evaluation = *config.shots * settings;
  }
  if (config.ansatz == AnsatzKind::HardwareEfficient) {
    const auto a = ansatz_site_amplitudes(h, config, r.best_params);
    double w = 0.0;
    for (const auto& z : a) w += std::norm(z);
    if (w > 1e-300) {
      r.physical_energy = quadratic_form(h, a) / w;
      r.physical_relative_error = relative_error(*r.physical_energy, r.exact_ground);
    }
  }
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return r;
}

}  // namespace sesq

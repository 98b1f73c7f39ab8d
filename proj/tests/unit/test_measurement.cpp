#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sesq/ansatz.hpp"
#include "sesq/measurement.hpp"

namespace {

using namespace sesq;

SparseState one_hot_state(const std::vector<Complex>& alpha) {
  std::vector<std::pair<BasisIndex, Complex>> terms;
  for (std::size_t j = 0; j < alpha.size(); ++j) terms.emplace_back(BasisIndex{1} << j, alpha[j]);
  return SparseState::from_terms(static_cast<int>(alpha.size()), terms);
}

StateVector binary_state(const std::vector<Complex>& alpha, const EncodingMap& map) {
  std::vector<Complex> amps(std::size_t{1} << map.num_qubits());
  for (int j = 0; j < map.num_sites(); ++j) amps[map.codeword(j)] = alpha[j];
  return StateVector::from_amplitudes(std::move(amps));
}

double cos_term(const std::vector<Complex>& a, int j, int k) { return 2 * (std::conj(a[j]) * a[k]).real(); }
double sin_term(const std::vector<Complex>& a, int j, int k) { return 2 * (std::conj(a[j]) * a[k]).imag(); }

std::vector<SettingEstimates> exact_binary(const StateVector& data, const EncodingMap& map) {
  std::vector<SettingEstimates> out;
  for (const auto& s : settings_binary(map.num_qubits())) out.push_back(estimate_setting_exact(data, s, map));
  return out;
}

std::vector<SettingEstimates> exact_original(const SparseState& state) {
  std::vector<SettingEstimates> out;
  for (const auto& s : settings_original(state.num_qubits())) out.push_back(estimate_setting_exact(state, s));
  return out;
}

TEST(Settings, Original) {
  const auto s4 = settings_original(4);
  ASSERT_EQ(s4.size(), 3u);
  EXPECT_EQ(s4[0].basis_string(), "ZZZZ");
  EXPECT_EQ(s4[1].basis_string(), "XXXX");
  EXPECT_EQ(s4[2].basis_string(), "XYXY");
  EXPECT_EQ(s4[0].label(), "M_Z");
  EXPECT_EQ(s4[2].label(), "M_XY");
  EXPECT_EQ(settings_original(5)[2].basis_string(), "XYXYX");
  EXPECT_EQ(settings_original(1).size(), 3u);
}

TEST(Settings, Binary) {
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(settings_binary(n).size(), static_cast<std::size_t>(2 * n + 1));
  const auto s5 = settings_binary(5);
  EXPECT_EQ(s5[0].basis_string(), "ZZZZZ");
  EXPECT_EQ(s5[3].label(), "BX(2)");
  EXPECT_EQ(s5[3].basis_string(), "ZZXZZ");
  EXPECT_EQ(s5[8].label(), "BY(2)");
  EXPECT_EQ(s5[8].basis_string(), "ZZYZZ");
}

const PairEstimate* find_pair(const SettingEstimates& e, int j, int k) {
  for (const auto& p : e.pairs)
    if (p.j == j && p.k == k) return &p;
  return nullptr;
}

TEST(BinaryEstimator, EqualSuperpositions) {
  const auto map = EncodingMap::build(8);
  // Sites 2 and 6: codewords 011 and 111 differ at position 2.
  const int j = 2, k = 6, l = 2;
  const double r = 1 / std::sqrt(2.0);
  for (auto [phase, want_x, want_y] : {std::tuple{Complex(1, 0), 1.0, 0.0}, std::tuple{Complex(0, 1), 0.0, 1.0}}) {
    std::vector<Complex> a(8);
    a[j] = r;
    a[k] = r * phase;
    const auto data = binary_state(a, map);
    const auto bx = estimate_setting_exact(data, settings_binary(3)[1 + l], map);
    const auto by = estimate_setting_exact(data, settings_binary(3)[4 + l], map);
    ASSERT_NE(find_pair(bx, j, k), nullptr);
    EXPECT_NEAR(find_pair(bx, j, k)->value, want_x, 1e-12);
    EXPECT_NEAR(find_pair(by, j, k)->value, want_y, 1e-12);
  }
}

TEST(BinaryEstimator, RandomThreeQubitStateAllEdges) {
  std::mt19937_64 rng(17);
  const auto map = EncodingMap::build(8);
  const auto a = oracle::random_state(8, rng);
  const auto data = binary_state(a, map);
  const auto est = exact_binary(data, map);
  int checked = 0;
  for (const auto& e : hypercube_edges(map)) {
    const auto* x = find_pair(est[1 + e.position], e.j, e.k);
    const auto* y = find_pair(est[4 + e.position], e.j, e.k);
    ASSERT_TRUE(x && y);
    EXPECT_NEAR(x->value, cos_term(a, e.j, e.k), 1e-12);
    EXPECT_NEAR(y->value, sin_term(a, e.j, e.k), 1e-12);
    ++checked;
  }
  EXPECT_EQ(checked, 12);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(est[0].site_weights[j], std::norm(a[j]), 1e-12);
}

TEST(OriginalEstimator, ChainCorrelatorsIncludingSignConversion) {
  std::mt19937_64 rng(5);
  for (int n_sites : {2, 5, 6}) {
    const auto a = oracle::random_state(static_cast<std::size_t>(n_sites), rng);
    const auto est = exact_original(one_hot_state(a));
    for (int j = 0; j < n_sites; ++j) EXPECT_NEAR(est[0].site_weights[j], std::norm(a[j]), 1e-12);
    ASSERT_EQ(est[1].pairs.size(), static_cast<std::size_t>(n_sites - 1));
    ASSERT_EQ(est[2].pairs.size(), static_cast<std::size_t>(n_sites - 1));
    for (int j = 0; j + 1 < n_sites; ++j) {
      EXPECT_NEAR(find_pair(est[1], j, j + 1)->value, cos_term(a, j, j + 1), 1e-12);
      EXPECT_NEAR(find_pair(est[2], j, j + 1)->value, sin_term(a, j, j + 1), 1e-12);
    }
  }
}

TEST(OriginalEstimator, ShotHistogramMatchesExactInTheLimit) {
  std::mt19937_64 rng(6);
  const auto a = oracle::random_state(4, rng);
  const auto state = one_hot_state(a);
  const auto dense = state.to_dense();
  for (const auto& s : settings_original(4)) {
    const auto exact = estimate_setting_exact(state, s);
    const auto hist = sample_bitstrings(dense, s.bases, 2'000'000, 99);
    const auto shot = estimate_setting(hist, s, 4);
    EXPECT_EQ(shot.shots_used, 2'000'000u);
    for (std::size_t i = 0; i < exact.pairs.size(); ++i) EXPECT_NEAR(shot.pairs[i].value, exact.pairs[i].value, 5e-3);
    for (std::size_t i = 0; i < exact.site_weights.size(); ++i)
      EXPECT_NEAR(shot.site_weights[i], exact.site_weights[i], 5e-3);
  }
}

TEST(Reconstruction, SingleActiveSite) {
  std::vector<Complex> a(5);
  a[3] = 1.0;
  const auto r = reconstruct_profile(exact_original(one_hot_state(a)), Protocol::Original, 5, 1e-6);
  EXPECT_EQ(r.graph.nodes, std::vector<int>{3});
  EXPECT_TRUE(r.graph.edges.empty());
  EXPECT_EQ(r.graph.num_components, 1);
  EXPECT_NEAR(r.profile.magnitudes[3], 1.0, 1e-12);
  EXPECT_EQ(r.profile.reference_site, 3);
  EXPECT_EQ(r.diagnostics.inactive_sites, (std::vector<int>{0, 1, 2, 4}));
}

TEST(Reconstruction, UniformBinarySuperposition) {
  const auto map = EncodingMap::build(8);
  const std::vector<Complex> a(8, 1 / std::sqrt(8.0));
  const auto r = reconstruct_profile(exact_binary(binary_state(a, map), map), Protocol::Binary, 8, 1e-9);
  EXPECT_EQ(r.graph.num_components, 1);
  EXPECT_EQ(r.graph.edges.size(), 12u);
  for (const auto& e : r.graph.edges) EXPECT_NEAR(e.delta, 0.0, 1e-12);
  for (double ph : r.profile.phases) EXPECT_NEAR(ph, 0.0, 1e-12);
}

TEST(Reconstruction, MissingZSettingThrows) {
  const auto map = EncodingMap::build(4);
  auto est = exact_binary(binary_state({0.5, 0.5, 0.5, 0.5}, map), map);
  est.erase(est.begin());
  EXPECT_THROW(reconstruct_profile(est, Protocol::Binary, 4, 1e-9), std::invalid_argument);
}

TEST(Energy, SingleSite) {
  const auto h = SiteHamiltonian::validate({{0.42}});
  const std::vector<Complex> a{1.0};
  EXPECT_NEAR(estimate_energy_original(h, one_hot_state(a), {}).energy, 0.42, 1e-15);
  const auto map = EncodingMap::build(1);
  EXPECT_NEAR(estimate_energy_binary(h, binary_state(a, map), map, {}).energy, 0.42, 1e-15);
}

TEST(Energy, ExactModeReproducesQuadraticForm) {
  std::mt19937_64 rng(88);
  for (int n_sites : {2, 3, 5, 8, 13}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> raw = oracle::random_hermitian(n_sites, rng);
      const auto h = SiteHamiltonian::validate(n_sites, raw);
      const auto a = oracle::random_state(static_cast<std::size_t>(n_sites), rng);
      const double want = oracle::quadratic_form(raw, a);
      const auto orig = estimate_energy_original(h, one_hot_state(a), {});
      EXPECT_NEAR(orig.energy, want, 1e-10);
      EXPECT_FALSE(orig.flagged());
      const auto map = EncodingMap::build(n_sites);
      const auto bin = estimate_energy_binary(h, binary_state(a, map), map, {});
      EXPECT_NEAR(bin.energy, want, 1e-10);
      EXPECT_FALSE(bin.flagged());
      EXPECT_EQ(bin.settings.size(), static_cast<std::size_t>(2 * map.num_qubits() + 1));
    }
  }
}

TEST(Energy, ChainWithSesAnsatzState) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(-3, 3);
  const auto h = make_chain(8, 1.0, 0.5, 3);
  std::vector<double> p(14);
  for (auto& v : p) v = ang(rng);
  const auto a = oracle::ses_amplitudes(p, 8);
  const auto map = EncodingMap::build(8);
  const auto data = restrict_to_register(run_dense(build_binary_ses_circuit(p, map)), 2, 3);
  EXPECT_NEAR(estimate_energy_binary(h, data, map, {}).energy, quadratic_form(h, a), 1e-10);
}

TEST(Energy, ProtocolsAgreeOnEquivalentAnsatzStates) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int n_sites : {2, 4, 8, 16}) {
    const auto h = make_random_hermitian(n_sites, rng());
    const auto map = EncodingMap::build(n_sites);
    std::vector<double> p(static_cast<std::size_t>(ses_param_count(n_sites)));
    for (auto& v : p) v = ang(rng);
    const auto orig = estimate_energy_original(h, run_sparse(build_ses_circuit(p, n_sites)), {});
    const auto data = restrict_to_register(run_dense(build_binary_ses_circuit(p, map)), 2, map.num_qubits());
    const auto bin = estimate_energy_binary(h, data, map, {});
    EXPECT_NEAR(orig.energy, bin.energy, 1e-9) << n_sites;
  }
}

TEST(Energy, GlobalPhaseInvariance) {
  std::mt19937_64 rng(90);
  const int n_sites = 8;
  std::vector<Complex> raw = oracle::random_hermitian(n_sites, rng);
  const auto h = SiteHamiltonian::validate(n_sites, raw);
  const auto a = oracle::random_state(n_sites, rng);
  auto b = a;
  for (auto& v : b) v *= std::polar(1.0, 1.234);
  const auto map = EncodingMap::build(n_sites);
  const auto ea = estimate_energy_binary(h, binary_state(a, map), map, {});
  const auto eb = estimate_energy_binary(h, binary_state(b, map), map, {});
  EXPECT_NEAR(ea.energy, eb.energy, 1e-12);
  for (int j = 0; j < n_sites; ++j) {
    EXPECT_NEAR(ea.reconstruction.profile.magnitudes[j], eb.reconstruction.profile.magnitudes[j], 1e-12);
    EXPECT_NEAR(ea.reconstruction.profile.phases[j], eb.reconstruction.profile.phases[j], 1e-12);
  }
  for (std::size_t i = 0; i < ea.reconstruction.graph.edges.size(); ++i)
    EXPECT_NEAR(ea.reconstruction.graph.edges[i].delta, eb.reconstruction.graph.edges[i].delta, 1e-12);
  const auto oa = estimate_energy_original(h, one_hot_state(a), {});
  const auto ob = estimate_energy_original(h, one_hot_state(b), {});
  EXPECT_NEAR(oa.energy, ob.energy, 1e-12);
}

TEST(Reconstruction, ThresholdMonotonicity) {
  std::mt19937_64 rng(3);
  const auto map = EncodingMap::build(16);
  auto a = oracle::random_state(16, rng);
  for (int j = 0; j < 16; ++j) a[j] *= std::pow(10.0, -0.5 * j);
  const double norm = std::sqrt(std::accumulate(a.begin(), a.end(), 0.0,
                                                [](double s, Complex v) { return s + std::norm(v); }));
  for (auto& v : a) v /= norm;
  const auto est = exact_binary(binary_state(a, map), map);
  std::size_t last = 17;
  for (double eps : {1e-12, 1e-9, 1e-6, 1e-4, 1e-2, 1e-1, 0.5}) {
    const auto r = reconstruct_profile(est, Protocol::Binary, 16, eps);
    EXPECT_LE(r.graph.nodes.size(), last);
    last = r.graph.nodes.size();
  }
}

TEST(Reconstruction, CycleConsistency) {
  std::mt19937_64 rng(12);
  const int n = 4;
  const auto map = EncodingMap::build(1 << n);
  const auto a = oracle::random_state(std::size_t{1} << n, rng);
  const auto r = reconstruct_profile(exact_binary(binary_state(a, map), map), Protocol::Binary, 1 << n, 1e-9);
  std::map<std::pair<int, int>, double> delta;
  for (const auto& e : r.graph.edges) delta[{e.j, e.k}] = e.delta;
  auto step = [&](BasisIndex from, BasisIndex to) {
    const int j = *map.site_of(from), k = *map.site_of(to);
    return j < k ? delta.at({j, k}) : -delta.at({k, j});
  };
  for (BasisIndex c = 0; c < (BasisIndex{1} << n); ++c)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        const BasisIndex bx = BasisIndex{1} << x, by = BasisIndex{1} << y;
        const double loop = step(c, c ^ bx) + step(c ^ bx, c ^ bx ^ by) + step(c ^ bx ^ by, c ^ by) + step(c ^ by, c);
        EXPECT_LT(std::abs(std::remainder(loop, 2 * std::numbers::pi)), 1e-8);
      }
}

TEST(Reconstruction, DisconnectedBinaryRegionsAreFlagged) {
  // Sites 0 and 1 carry codewords 01 and 10 under the shifted map with N = 4;
  // sites 2 (11) and 3 (00) vanish, and 01 and 10 differ in two bits.
  const auto map = EncodingMap::build(4);
  std::vector<Complex> a{1 / std::sqrt(2.0), 0.0, 0.0, 0.0};
  a[1] = Complex(0, 1 / std::sqrt(2.0));
  auto h = make_random_hermitian(4, 3);
  const auto est = estimate_energy_binary(h, binary_state(a, map), map, {});
  EXPECT_EQ(est.reconstruction.graph.num_components, 2);
  EXPECT_TRUE(est.flagged());
  ASSERT_EQ(est.unresolved_pairs.size(), 1u);
  EXPECT_EQ(est.unresolved_pairs[0], std::make_pair(0, 1));
  EXPECT_FALSE(est.reconstruction.diagnostics.warnings.empty());
}

TEST(Reconstruction, OriginalChainSplitByVanishingSite) {
  std::vector<Complex> a{0.6, 0.0, Complex(0, 0.8)};
  const auto est = estimate_energy_original(make_chain(3, 1.0, 0.0, 0), one_hot_state(a), {});
  EXPECT_EQ(est.reconstruction.graph.num_components, 2);
  // No hopping joins 0 and 2 directly, so no energy term is lost.
  EXPECT_TRUE(est.unresolved_pairs.empty());
  EXPECT_TRUE(est.flagged());
  EXPECT_NEAR(est.energy, 0.0, 1e-12);
}

TEST(ShotMode, UnbiasedOverSeeds) {
  std::mt19937_64 rng(1234);
  const auto map = EncodingMap::build(8);
  const auto a = oracle::random_state(8, rng);
  const auto data = binary_state(a, map);
  const auto exact = exact_binary(data, map);
  const auto settings = settings_binary(3);
  const int seeds = 100;
  for (std::size_t s = 0; s < settings.size(); ++s) {
    const std::size_t m = s == 0 ? exact[s].site_weights.size() : exact[s].pairs.size();
    std::vector<double> sum(m), sumsq(m);
    for (int seed = 0; seed < seeds; ++seed) {
      const auto hist = sample_bitstrings(data, settings[s].bases, 10'000, derive_seed(7, seed));
      const auto est = estimate_setting(hist, settings[s], 8, &map);
      for (std::size_t i = 0; i < m; ++i) {
        const double v = s == 0 ? est.site_weights[i] : est.pairs[i].value;
        sum[i] += v;
        sumsq[i] += v * v;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double mean = sum[i] / seeds;
      const double sd = std::sqrt(std::max(0.0, (sumsq[i] - seeds * mean * mean) / (seeds - 1)));
      const double want = s == 0 ? exact[s].site_weights[i] : exact[s].pairs[i].value;
      EXPECT_LE(std::abs(mean - want), 4 * sd / std::sqrt(double(seeds)) + 1e-12) << settings[s].label() << " " << i;
    }
  }
}

TEST(ShotMode, EnergyIsDeterministicAndAccountsShots) {
  const auto h = make_chain(8, 1.0, 1.0, 4);
  std::mt19937_64 rng(2);
  const auto a = oracle::random_state(8, rng);
  const auto map = EncodingMap::build(8);
  const EnergyOptions opts{.shots = 5000, .seed = 11};
  const auto e1 = estimate_energy_binary(h, binary_state(a, map), map, opts);
  const auto e2 = estimate_energy_binary(h, binary_state(a, map), map, opts);
  EXPECT_EQ(e1.energy, e2.energy);
  EXPECT_EQ(e1.total_shots, 5000u * 7);
  EXPECT_NEAR(e1.energy, quadratic_form(h, a), 0.2);
  const auto o = estimate_energy_original(h, one_hot_state(a), opts);
  EXPECT_EQ(o.total_shots, 5000u * 3);
  EXPECT_NEAR(o.energy, quadratic_form(h, a), 0.2);
  EXPECT_DOUBLE_EQ(default_threshold(std::nullopt), 1e-9);
  EXPECT_DOUBLE_EQ(default_threshold(10'000), 0.03);
  EXPECT_DOUBLE_EQ(default_threshold(10'000'000'000'000ull), 1e-6);
}

TEST(ShotMode, UnknownCodewordsAreCounted) {
  // N = 5 leaves codewords 110 and 111 unused under the shifted map.
  const auto map = EncodingMap::build(5);
  ShotHistogram hist;
  hist.num_qubits = 3;
  hist.counts = {{0b001, 60}, {0b111, 40}};
  hist.total_shots = 100;
  const auto est = estimate_setting(hist, settings_binary(3)[0], 5, &map);
  EXPECT_EQ(est.unknown_shots, 40u);
  EXPECT_NEAR(est.site_weights[0], 0.6, 1e-15);
}

}  // namespace

#include <gtest/gtest.h>

#include <cmath>
#include <iostream>
#include <numeric>

#include "sesq/ansatz.hpp"
#include "sesq/measurement.hpp"
#include "sesq/resources.hpp"

namespace {

using namespace sesq;

const SpeedupRow& row(const std::vector<SpeedupRow>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.approach == name) return r;
  throw std::runtime_error("missing row " + name);
}

TEST(Volumetric, Examples) {
  const std::vector<double> p(6, 0.4);
  const auto one_hot = build_ses_circuit(p, 4);
  const auto r = volumetric_cost(one_hot, 3, "one_hot");
  EXPECT_EQ(r.width, 4);
  EXPECT_EQ(r.settings, 3);
  EXPECT_EQ(r.depth, circuit_metadata(one_hot).depth);
  EXPECT_EQ(r.volume, 4 * r.depth * 3);

  const auto map = EncodingMap::build(4);
  const auto bin = volumetric_cost(build_binary_ses_circuit(p, map),
                                   static_cast<int>(settings_binary(map.num_qubits()).size()));
  EXPECT_EQ(bin.settings, 5);
  EXPECT_EQ(bin.volume, bin.width * bin.depth * bin.settings);

  const auto empty = volumetric_cost(Circuit(3), 1);
  EXPECT_EQ(empty.volume, 0);
}

TEST(Asymptotic, ThousandSites) {
  const auto t = asymptotic_table(1024);
  EXPECT_EQ(t.n, 10);
  const auto& cf = row(t.constants_free_speedups, "hardware_efficient");
  EXPECT_NEAR(cf.ratio, 1024.0 * 1024 / 1000, 1e-9);
  EXPECT_EQ(cf.bucket, 3);
  const auto& unit = row(t.unit_speedups, "hardware_efficient");
  EXPECT_NEAR(unit.ratio, 3.0 * 1048576 / (100 * 21), 1e-9);
  EXPECT_EQ(unit.bucket, 3);
}

TEST(Asymptotic, MillionSites) {
  const auto t = asymptotic_table(1 << 20);
  EXPECT_EQ(t.n, 20);
  const auto& he = row(t.constants_free_speedups, "hardware_efficient");
  const auto& full = row(t.constants_free_speedups, "full");
  const auto& gray = row(t.constants_free_speedups, "gray_ses");
  EXPECT_NEAR(he.ratio, std::pow(2.0, 40) / 8000, 1e-3);
  EXPECT_EQ(he.bucket, 8);
  EXPECT_NEAR(full.ratio, 2621.44, 1e-9);
  EXPECT_EQ(full.bucket, 3);
  EXPECT_NEAR(gray.ratio, 131.072, 1e-9);
  EXPECT_EQ(gray.bucket, 2);
  EXPECT_NEAR(row(t.unit_speedups, "hardware_efficient").ratio, 3.0 * std::pow(2.0, 40) / (400 * 41), 1e-3);
}

TEST(Asymptotic, SmallestAndRowProducts) {
  const auto t = asymptotic_table(2);
  EXPECT_EQ(t.n, 1);
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& r : t.rows) {
    EXPECT_EQ(r.volume, r.width * r.depth * r.settings);
    EXPECT_FALSE(r.formula.empty());
  }
  for (const auto& s : t.unit_speedups) EXPECT_TRUE(std::isfinite(s.ratio));
  EXPECT_THROW(asymptotic_table(1), std::invalid_argument);
  EXPECT_FALSE(format_table(t).empty());
}

TEST(Asymptotic, MeasuredBinaryCostTracksTheModel) {
  // log-log slope of measured volume against N n^2 (2n+1).
  std::vector<double> xs, ys;
  for (int n_sites = 4; n_sites <= 256; n_sites *= 2) {
    const auto map = EncodingMap::build(n_sites);
    const int n = map.num_qubits();
    const std::vector<double> p(static_cast<std::size_t>(ses_param_count(n_sites)), 0.3);
    const auto r = volumetric_cost(build_binary_ses_circuit(p, map), 2 * n + 1);
    const double model = static_cast<double>(n_sites) * n * n * (2 * n + 1);
    xs.push_back(std::log(model));
    ys.push_back(std::log(r.volume));
    std::cout << "[volumetric] N=" << n_sites << " measured=" << r.volume << " ratio=" << r.volume / model << "\n";
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  std::cout << "[volumetric] log-log slope=" << slope << "\n";
  EXPECT_LE(slope, 1.15);
}

}  // namespace

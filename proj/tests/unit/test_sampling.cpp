#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sesq/sampling.hpp"

namespace {

using namespace sesq;

std::vector<MeasureBasis> bases(const std::string& s) {
  std::vector<MeasureBasis> b;
  for (char c : s) b.push_back(static_cast<MeasureBasis>(c));
  return b;
}

std::uint64_t total(const ShotHistogram& h) {
  std::uint64_t t = 0;
  for (const auto& [k, c] : h.counts) t += c;
  return t;
}

TEST(Sampling, ZeroStateInZBasis) {
  const auto h = sample_bitstrings(StateVector(1), bases("Z"), 1000, 1);
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.counts.at(0), 1000u);
  EXPECT_EQ(total(h), h.total_shots);
}

TEST(Sampling, PlusStateInXBasisGivesPlusOutcomeOnly) {
  const double r = 1 / std::sqrt(2.0);
  const auto plus = StateVector::from_amplitudes({r, r});
  const auto h = sample_bitstrings(plus, bases("X"), 777, 3);
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.counts.at(0), 777u);
}

TEST(Sampling, BinomialFrequencyWithinFiveSigma) {
  const double r = 1 / std::sqrt(2.0);
  const auto plus = StateVector::from_amplitudes({r, r});
  const std::uint64_t shots = 10000;
  const auto h = sample_bitstrings(plus, bases("Z"), shots, 12345);
  const double f = static_cast<double>(h.counts.count(1) ? h.counts.at(1) : 0) / shots;
  EXPECT_LT(std::abs(f - 0.5), 5 * 0.5 / std::sqrt(static_cast<double>(shots)));
}

TEST(Sampling, Deterministic) {
  std::mt19937_64 rng(2);
  const auto s = StateVector::from_amplitudes(oracle::random_state(16, rng));
  const auto a = sample_bitstrings(s, bases("XYZX"), 5000, 99);
  const auto b = sample_bitstrings(s, bases("XYZX"), 5000, 99);
  const auto c = sample_bitstrings(s, bases("XYZX"), 5000, 100);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  EXPECT_EQ(total(a), 5000u);
}

TEST(Sampling, ZeroShotsRejected) {
  EXPECT_THROW(sample_bitstrings(StateVector(1), bases("Z"), 0, 1), std::invalid_argument);
  EXPECT_THROW(sample_bitstrings(StateVector(2), bases("Z"), 1, 1), std::invalid_argument);
}

// The rotated-basis distribution reproduces every Pauli expectation exactly.
TEST(Sampling, RotatedProbabilitiesReproducePauliExpectations) {
  std::mt19937_64 rng(17);
  const std::string letters = "XYZ";
  for (int trial = 0; trial < 100; ++trial) {
    const int q = 1 + trial % 4;
    const auto v = oracle::random_state(std::size_t{1} << q, rng);
    std::string ops;
    for (int i = 0; i < q; ++i) ops += letters[rng() % 3];
    const auto p = basis_probabilities(StateVector::from_amplitudes(v), bases(ops));
    double from_counts = 0.0;
    for (std::size_t b = 0; b < p.size(); ++b) from_counts += p[b] * ((std::popcount(b) % 2) ? -1.0 : 1.0);
    EXPECT_NEAR(from_counts, oracle::expectation(oracle::pauli_string(ops), v), 1e-12) << ops;
  }
}

TEST(Sampling, MultinomialMeansMatchProbabilities) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  std::vector<double> mean(4, 0.0);
  const int reps = 400;
  const std::uint64_t shots = 1000;
  for (int r = 0; r < reps; ++r) {
    const auto h = sample_distribution(p, 2, shots, derive_seed(5, static_cast<std::uint64_t>(r)));
    ASSERT_EQ(total(h), shots);
    for (const auto& [k, c] : h.counts) mean[k] += static_cast<double>(c) / (shots * reps);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double se = std::sqrt(p[i] * (1 - p[i]) / (shots * reps));
    EXPECT_LT(std::abs(mean[i] - p[i]), 5 * se);
  }
}

TEST(Bitstrings, BigEndianRendering) {
  EXPECT_EQ(to_bitstring(0b001, 3), "001");
  EXPECT_EQ(to_bitstring(0b110, 3), "110");
  EXPECT_EQ(parse_bitstring("110"), 0b110u);
  EXPECT_THROW(parse_bitstring("12"), std::invalid_argument);
}

TEST(Seeds, DerivationSeparatesChildren) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

}  // namespace

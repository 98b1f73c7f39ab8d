#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "sesq/hamiltonian_io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sesq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(SESQ_CLI_PATH) + " --output-dir " + dir_.string() + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " + (dir_ / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  json read(const std::string& name) const { return json::parse(slurp(name)); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

TEST_F(Cli, GenChainHasOpenChainSpectrum) {
  ASSERT_EQ(run("gen --family chain --n_sites 4 --t 1 --out chain.json"), 0);
  const auto h = sesq::load_hamiltonian(path("chain.json"));
  const auto spec = sesq::exact_spectrum(h);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(spec[4 - k], 2 * std::cos(k * std::numbers::pi / 5), 1e-12);
  EXPECT_EQ(read("chain.json")["generator"]["family"], "chain");
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen --family random_hermitian --n_sites 3 --seed 7 --out a.json"), 0);
  ASSERT_EQ(run("gen --family random_hermitian --n_sites 3 --seed 7 --out b.json"), 0);
  EXPECT_EQ(read("a.json")["entries"], read("b.json")["entries"]);
}

TEST_F(Cli, GenUsageErrors) {
  EXPECT_EQ(run("gen --family chain --n_sites 0"), 1);
  EXPECT_EQ(run("gen --family nonsense --n_sites 3"), 1);
  EXPECT_EQ(run("gen"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, SolveTwoSiteChain) {
  write("cfg.json", R"({"generator": {"family": "chain", "n_sites": 2}, "max_evaluations": 400})");
  ASSERT_EQ(run("solve --config " + path("cfg.json") + " --output r.json --trace_csv t.csv"), 0);
  const auto r = read("r.json");
  EXPECT_EQ(r["status"], "converged");
  EXPECT_LT(r["relative_error"].get<double>(), 1e-6);
  EXPECT_EQ(r["manifest"]["command"], "solve");
  EXPECT_EQ(slurp("t.csv").rfind("evaluation,energy,best_so_far\n", 0), 0u);

  // Rerunning from the report's manifest reproduces the result bit for bit.
  ASSERT_EQ(run("solve --config " + path("r.json") + " --output r2.json"), 0);
  EXPECT_EQ(read("r2.json")["trace"], r["trace"]);
  EXPECT_EQ(read("r2.json")["best_params"], r["best_params"]);
}

TEST_F(Cli, SolveMalformedConfigNamesTheKey) {
  write("cfg.json", R"({"generator": {"family": "chain", "n_sites": 2}, "max_evalutions": 10})");
  EXPECT_EQ(run("solve --config " + path("cfg.json")), 1);
  EXPECT_NE(slurp("stderr.txt").find("max_evalutions"), std::string::npos);
  write("bad.json", "{not json");
  EXPECT_EQ(run("solve --config " + path("bad.json")), 1);
}

TEST_F(Cli, SolveBudgetOfOneIsNonConverged) {
  write("cfg.json", R"({"generator": {"family": "chain", "n_sites": 3}, "max_evaluations": 1})");
  EXPECT_EQ(run("solve --config " + path("cfg.json") + " --output r.json"), 2);
  EXPECT_EQ(read("r.json")["status"], "budget_exhausted");
}

TEST_F(Cli, ReconstructSingleSiteState) {
  ASSERT_EQ(run("gen --family random_hermitian --n_sites 4 --seed 3 --out h.json"), 0);
  write("amps.json", R"({"amplitudes": [0, 0, 1, 0]})");
  EXPECT_EQ(run("reconstruct --hamiltonian " + path("h.json") + " --amplitudes " + path("amps.json") + " --out r.json"),
            0);
  const auto r = read("r.json");
  EXPECT_EQ(r["phase_graph"]["nodes"], json::array({2}));
  const auto h = sesq::load_hamiltonian(path("h.json"));
  EXPECT_NEAR(r["energy"].get<double>(), h(2, 2).real(), 1e-12);
}

TEST_F(Cli, ReconstructAnsatzParamsExactAndShots) {
  ASSERT_EQ(run("gen --family random_hermitian --n_sites 8 --seed 5 --out h.json"), 0);
  write("p.json", R"({"params": [0.1, -0.4, 1.2, 0.3, -2.0, 0.7, 0.5, 0.5, 1.1, -1.3, 2.2, 0.2, -0.9, 0.8]})");
  for (const std::string ansatz : {"one_hot_ses", "binary_ses"}) {
    ASSERT_EQ(run("reconstruct --hamiltonian " + path("h.json") + " --params " + path("p.json") + " --ansatz " + ansatz +
                  " --out r.json"),
              0);
    const auto r = read("r.json");
    EXPECT_NEAR(r["energy"].get<double>(), r["oracle_energy"].get<double>(), 1e-10) << ansatz;
  }
  const int rc = run("reconstruct --hamiltonian " + path("h.json") + " --params " + path("p.json") +
                     " --ansatz binary_ses --shots 100 --seed 4 --out s.json");
  EXPECT_TRUE(rc == 0 || rc == 2);
  const auto s = read("s.json");
  EXPECT_EQ(s["total_shots"], 7 * 100);
  std::uint64_t sum = 0;
  for (const auto& e : s["settings"]) sum += e["shots"].get<std::uint64_t>();
  EXPECT_EQ(sum, 700u);
}

TEST_F(Cli, ReconstructWidthMismatchIsUsageError) {
  ASSERT_EQ(run("gen --family chain --n_sites 4 --out h.json"), 0);
  write("amps.json", R"({"amplitudes": [1, 0, 0]})");
  EXPECT_EQ(run("reconstruct --hamiltonian " + path("h.json") + " --amplitudes " + path("amps.json")), 1);
}

TEST_F(Cli, ResourcesTables) {
  ASSERT_EQ(run("resources --n_sites 1024 --out t.json"), 0);
  const std::string out = slurp("stdout.txt");
  EXPECT_NE(out.find("1048.58"), std::string::npos);
  const auto t = read("t.json");
  bool found = false;
  for (const auto& r : t["speedup_constants_free"])
    if (r["approach"] == "hardware_efficient") {
      EXPECT_EQ(r["log10_bucket"], 3);
      found = true;
    }
  EXPECT_TRUE(found);

  ASSERT_EQ(run("resources --n_sites 1048576 --out m.json"), 0);
  std::map<std::string, int> buckets;
  const auto m = read("m.json");
  for (const auto& r : m["speedup_constants_free"])
    buckets[r["approach"].get<std::string>()] = r["log10_bucket"].get<int>();
  EXPECT_EQ(buckets["hardware_efficient"], 8);
  EXPECT_EQ(buckets["full"], 3);
  EXPECT_EQ(buckets["gray_ses"], 2);

  EXPECT_EQ(run("resources --n_sites 2 --measured --circuit_out c.txt"), 0);
  EXPECT_EQ(slurp("c.txt").rfind("WIDTH 3", 0), 0u);
  EXPECT_EQ(run("resources --n_sites 1"), 1);
}

TEST_F(Cli, GoldenExamplesLoad) {
  const fs::path golden(SESQ_GOLDEN_DIR);
  EXPECT_NO_THROW(sesq::load_hamiltonian(golden / "hamiltonian.json"));
  EXPECT_EQ(run("solve --config " + (golden / "solve_config.json").string() + " --output g.json"), 0);
}

}  // namespace

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli/cli.hpp"
#include "cli/io.hpp"

namespace fs = std::filesystem;
using nlpm::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nlpm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string first_line(const std::string& file) {
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST(CliIo, Fnv1a) {
  EXPECT_EQ(nlpm::cli::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(nlpm::cli::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(nlpm::cli::hex(255), "00000000000000ff");
}

TEST_F(CliTest, SimulateThenFit) {
  auto r = invoke({"simulate", "--n", "30", "--seed", "4", "--out", path("sim")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("sim/edges.txt")));
  EXPECT_EQ(first_line(path("sim/positions.csv")).rfind("# nlpm ", 0), 0u);

  r = invoke({"fit", "--edges", path("sim/edges.txt"), "--out", path("fit"), "--iterations", "40",
              "--burn-in", "10", "--thin", "3", "--mode", "noisy", "--M", "4", "--reference",
              path("sim/positions.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"z_draws.csv", "psi_draws.csv", "summary.json",
                        "posterior_mean_positions.csv", "id_map.json"}) {
    EXPECT_TRUE(fs::exists(path(std::string("fit/") + f))) << f;
  }
  std::ifstream in(path("fit/summary.json"));
  const auto s = nlohmann::json::parse(in);
  EXPECT_EQ(s.at("meta").at("schema_version"), 1);
  EXPECT_EQ(s.at("meta").at("seed"), 1);
  EXPECT_EQ(s.at("n_draws"), 10);
  EXPECT_EQ(s.at("network").at("N"), 30);
  EXPECT_TRUE(s.at("alignment").contains("rmse_to_reference"));

  std::ifstream psi(path("fit/psi_draws.csv"));
  std::string line;
  std::getline(psi, line);
  std::getline(psi, line);
  EXPECT_EQ(line, "draw,beta,theta");

  r = invoke({"compare", "fits", "--reference", path("fit"), "--other", path("fit")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cmp = nlohmann::json::parse(r.out);
  EXPECT_LT(cmp.at("position_rmse").get<double>(), 1e-12);
  EXPECT_TRUE(cmp.at("psi_means_inside_reference_interval").get<bool>());
}

TEST_F(CliTest, BoundsJson) {
  auto r = invoke({"bounds", "--n", "200", "--b", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  const auto& rep = j.at("reports")[0];
  EXPECT_EQ(rep.at("eta"), 0.0);
  EXPECT_EQ(rep.at("theorem2").at("z").at("value"), 0.0);
  EXPECT_EQ(rep.at("theorem3").at("value"), 0.0);

  // A narrow space keeps eta unsaturated, so the decrease is strict.
  r = invoke({"bounds", "--n", "50", "--M", "64,128,256", "--link", "hoff", "--beta-bounds",
              "-0.5,0.5", "--S", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.at("reports").size(), 3u);
  double prev = INFINITY;
  for (const auto& rp : j.at("reports")) {
    const double v = rp.at("theorem2").at("z").at("log_value").get<double>();
    EXPECT_LT(v, prev);
    prev = v;
  }

  r = invoke({"bounds", "--n", "6", "--M", "4,8", "--certify", "--instances", "2", "--proposals",
              "100", "--lemma-samples", "1000", "--link", "hoff", "--beta-bounds", "-0.5,0.5",
              "--S", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("certificates").at("passed").get<bool>());
}

TEST_F(CliTest, Study1AndBench) {
  auto r = invoke({"compare", "study1", "--networks", "3", "--n", "60", "--out",
                   path("study1.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("by_M").size(), 3u);
  std::ifstream csv(path("study1.csv"));
  std::string line;
  std::getline(csv, line);
  std::getline(csv, line);
  EXPECT_EQ(line, "network,seed,N,edges,M,exact_loglik,noisy_loglik,error");

  r = invoke({"bench", "--sizes", "40", "--sweeps", "2", "--M", "4,8"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream rows(r.out);
  int n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 2 + 3);  // comment, header, exact, noisy x2
}

TEST_F(CliTest, ConfigFile) {
  {
    std::ofstream cfg(path("run.toml"));
    cfg << "[simulate]\nn = 25\nseed = 8\nout = \"" << path("cfgsim") << "\"\n";
  }
  auto r = invoke({"--config", path("run.toml"), "simulate"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("cfgsim/params.json"));
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("N"), 25);
  EXPECT_EQ(j.at("seed"), 8);

  // A flag on the command line overrides the file.
  r = invoke({"--config", path("run.toml"), "simulate", "--n", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in2(path("cfgsim/params.json"));
  EXPECT_EQ(nlohmann::json::parse(in2).at("N"), 12);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"simulate"}).code, 2);  // --out is required
  EXPECT_EQ(invoke({"bounds", "--tau", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--link", "probit"}).code, 2);
  EXPECT_EQ(invoke({"fit", "--edges", path("missing.txt"), "--out", path("x")}).code, 3);
  {
    std::ofstream bad(path("bad.txt"));
    bad << "1 2 3\n";
  }
  const auto r = invoke({"fit", "--edges", path("bad.txt"), "--out", path("x")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("bad.txt:1"), std::string::npos);
  EXPECT_EQ(invoke({"fit", "--edges", path("bad.txt"), "--out", path("x"), "--burn-in", "5000"})
                .code,
            2);
}

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "entgeo/cli.hpp"
#include "entgeo/entgeo.hpp"

namespace fs = std::filesystem;
using namespace entgeo;
using entgeo::cli::main_entry;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("entgeo_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return main_entry(args, out_, err_);
  }

  std::vector<std::string> data_lines(const std::string& file) const {
    std::vector<std::string> lines;
    std::istringstream in(read_text(file));
    for (std::string line; std::getline(in, line);)
      if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST(ParseGrid, RangeIncludesEndpoint) {
  const auto g = cli::parse_grid("0.1..1.0:0.1");
  ASSERT_EQ(g.size(), 10u);
  EXPECT_DOUBLE_EQ(g.front(), 0.1);
  EXPECT_DOUBLE_EQ(g[2], 0.3);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_EQ(cli::parse_grid("0..1:0.01").size(), 101u);
}

TEST(ParseGrid, ListsAndSingles) {
  EXPECT_EQ(cli::parse_grid("0.5,1.0"), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(cli::parse_grid("0.25"), (std::vector<double>{0.25}));
  EXPECT_THROW(cli::parse_grid("0.1..1.0:0"), cli::ConfigError);
  EXPECT_THROW(cli::parse_grid("abc"), cli::ConfigError);
}

TEST(ParseDims, Forms) {
  EXPECT_EQ(cli::parse_dims("2x3"), (std::pair<int, int>{2, 3}));
  EXPECT_THROW(cli::parse_dims("2"), cli::ConfigError);
  EXPECT_THROW(cli::parse_dims("1x3"), cli::ConfigError);
}

TEST(Validate, RejectsOutOfRange) {
  cli::RunConfig c;
  c.command = cli::Command::Benchmark;
  c.eta_grid = {0.0};
  EXPECT_THROW(cli::validate(c), cli::ConfigError);
  c.eta_grid = {0.5};
  c.d_a = 3;
  c.d_b = 3;
  EXPECT_THROW(cli::validate(c), cli::ConfigError);
  c.d_a = 2;
  EXPECT_NO_THROW(cli::validate(c));
}

TEST_F(CliTest, FitThenClassifyRoundTrip) {
  ASSERT_EQ(run({"info", "--emit", "singlet", "-o", path("singlet.json")}), 0) << err_.str();
  ASSERT_EQ(run({"fit", "--eta", "0.5", "-o", path("model.json")}), 0) << err_.str();
  ASSERT_EQ(run({"classify", "--state", path("singlet.json"), "--model", path("model.json"), "--no-timestamp"}), 0)
      << err_.str();
  const std::string text = out_.str();
  EXPECT_NE(text.find("label,distance,membership,ppt"), std::string::npos);
  EXPECT_NE(text.find("\nentangled,"), std::string::npos);
  EXPECT_NE(text.find(",false\n"), std::string::npos);
}

TEST_F(CliTest, EmittedStateMatchesLibrary) {
  ASSERT_EQ(run({"info", "--emit", "horodecki:0.3", "-o", path("h.json")}), 0) << err_.str();
  EXPECT_LT((read_state(path("h.json")).matrix() - horodecki_state(0.3).matrix()).norm(), 1e-15);
}

TEST_F(CliTest, BenchmarkIsByteDeterministic) {
  const std::vector<std::string> base{"benchmark", "--n", "50", "--eta", "0.2,0.9", "--seed", "11", "--no-timestamp"};
  auto a = base, b = base;
  a.insert(a.end(), {"-o", path("a.csv")});
  b.insert(b.end(), {"-o", path("b.csv")});
  ASSERT_EQ(run(a), 0) << err_.str();
  ASSERT_EQ(run(b), 0) << err_.str();
  EXPECT_EQ(read_text(path("a.csv")), read_text(path("b.csv")));
  const auto lines = data_lines(path("a.csv"));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "norm,false_positives,false_negatives,sample_size,seed");
  const std::string head = read_text(path("a.csv")).substr(0, 200);
  EXPECT_NE(head.find("seed=11"), std::string::npos);
  EXPECT_NE(head.find("ensemble_size=36"), std::string::npos);
}

TEST_F(CliTest, BeSweepRows) {
  ASSERT_EQ(run({"be-sweep", "--eta", "0.5", "--a-grid", "20", "-o", path("be.csv")}), 0) << err_.str();
  const auto lines = data_lines(path("be.csv"));
  ASSERT_EQ(lines.size(), 21u);
  EXPECT_EQ(lines[0], "norm,a,distance,detected");
  EXPECT_NE(out_.str().find("detected=20/20"), std::string::npos);
}

TEST_F(CliTest, DistCompareRows) {
  ASSERT_EQ(run({"dist-compare", "--n", "3", "-o", path("d.csv")}), 0) << err_.str();
  EXPECT_EQ(data_lines(path("d.csv")).size(), 1u + 3u * 2u);
}

TEST_F(CliTest, ErasureCapacityGrid) {
  ASSERT_EQ(run({"capacity", "--erasure", "--eps-grid", "0..1:0.01", "-o", path("cap.csv")}), 0) << err_.str();
  const auto lines = data_lines(path("cap.csv"));
  ASSERT_EQ(lines.size(), 102u);
  EXPECT_EQ(lines[0], "epsilon,C,C_E");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double e = 0, c = 0, ce = 0;
    char sep;
    std::istringstream row(lines[i]);
    row >> e >> sep >> c >> sep >> ce;
    EXPECT_NEAR(c, 1.0 - e, 1e-12);
    EXPECT_NEAR(ce, 2.0 * c, 1e-12);
  }
}

TEST_F(CliTest, ChannelCapacityFromKrausFile) {
  write_text_atomic(path("bec.json"), channel_to_json(erasure_channel(0.3)));
  ASSERT_EQ(run({"capacity", "--channel", path("bec.json"), "-o", path("cap.csv")}), 0) << err_.str();
  const auto lines = data_lines(path("cap.csv"));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "C,gap,iterations,input_distribution");
  EXPECT_EQ(lines[1].rfind("0.7,", 0), 0u) << lines[1];
  EXPECT_NE(out_.str().find("C=0.7"), std::string::npos);
}

TEST_F(CliTest, SolverFailureExitCodeLeavesNoFile) {
  // Amplitude damping gives a Z channel, where the gap never reaches 1e-300.
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(0.7);
  k1(0, 1) = std::sqrt(0.3);
  write_text_atomic(path("ad.json"), channel_to_json(KrausChannel({k0, k1})));
  EXPECT_EQ(run({"capacity", "--channel", path("ad.json"), "--tol", "1e-300", "-o", path("out.csv")}), 3);
  EXPECT_FALSE(fs::exists(path("out.csv")));
  EXPECT_FALSE(fs::exists(path("out.csv.tmp")));
  EXPECT_NE(err_.str().find("not-converged"), std::string::npos) << err_.str();
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"benchmark", "--eta", "1.5"}), 2);
  EXPECT_EQ(run({"benchmark", "--dims", "3x3"}), 2);
  EXPECT_EQ(run({"capacity"}), 2);
  EXPECT_EQ(run({"info"}), 2);
  EXPECT_EQ(run({"nonsense"}), 2);
  EXPECT_EQ(run({"classify", "--state", path("missing.json"), "--eta", "0.5"}), 2);
  EXPECT_EQ(run({"fit", "--eps", "0"}), 2);
}

TEST_F(CliTest, Protocols) {
  ASSERT_EQ(run({"protocol", "chsh", "--no-timestamp"}), 0);
  EXPECT_NE(out_.str().find("2.82842712475"), std::string::npos) << out_.str();
  ASSERT_EQ(run({"protocol", "superdense", "--no-timestamp"}), 0);
  EXPECT_NE(out_.str().find("\n1,1,1\n"), std::string::npos) << out_.str();
  ASSERT_EQ(run({"protocol", "teleport", "--no-timestamp"}), 0);
  EXPECT_NE(out_.str().find("\n1,0.25,1\n"), std::string::npos) << out_.str();
  ASSERT_EQ(run({"protocol", "distill", "--no-timestamp"}), 0);
  EXPECT_NE(out_.str().find("\n1\n"), std::string::npos) << out_.str();
}

TEST_F(CliTest, InfoReportsPptAndEntropy) {
  ASSERT_EQ(run({"info", "--emit", "bell1", "-o", path("b.json")}), 0);
  ASSERT_EQ(run({"info", "--state", path("b.json"), "--no-timestamp"}), 0);
  EXPECT_NE(out_.str().find("\n4,1,"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find(",false,-0.5,false\n"), std::string::npos) << out_.str();
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}), 0); }

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dobinski/cli.hpp"

using namespace dobinski;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

}  // namespace

TEST(Cli, BellNumber) {
  const auto r = run({"bell", "--n", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "52\n");
  EXPECT_EQ(run({"bell", "--n", "6", "--restricted"}).out, "41\n");
  EXPECT_EQ(run({"bell", "--n", "2", "--x", "2"}).out, "6\n");
  EXPECT_EQ(run({"bell", "--n", "2", "--x", "1/2"}).out, "3/4\n");
}

TEST(Cli, Stirling) {
  EXPECT_EQ(run({"stirling", "--n", "4"}).out, "0 1 7 6 1\n");
  EXPECT_EQ(run({"stirling", "--n", "4", "--k", "2"}).out, "7\n");
  EXPECT_EQ(run({"stirling", "--n", "5", "--k", "6"}).out, "0\n");
}

TEST(Cli, StirlingTypeJson) {
  const auto r = run({"stirling-type", "--poly", "2:1", "--n", "2"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j, nlohmann::json({{"1", "1"}, {"2", "7"}, {"3", "6"}, {"4", "1"}}));
  const auto c = nlohmann::json::parse(run({"stirling-type", "--poly", "0:-5/3", "--n", "2"}).out);
  EXPECT_EQ(c, nlohmann::json({{"0", "25/9"}}));
}

TEST(Cli, DobinskiJson) {
  const auto r = run({"dobinski", "--poly", "1:1", "--n", "3", "--x", "1", "--tol", "1e-20"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("value") && j.contains("trunc_bound") && j.contains("terms_used"));
  const Real value = Real::parse(j["value"].get<std::string>(), 256);
  EXPECT_LE(abs(value - Real(5L, 256)), Real(1e-19, 64));
  EXPECT_EQ(j["precision_bits"], 256);
}

TEST(Cli, GeneratingFunctions) {
  const auto egf = nlohmann::json::parse(run({"egf", "--poly", "1:1", "--x", "1", "--lambda", "1"}).out);
  const Real closed = egf_closed_form_bell(1, 1);
  EXPECT_LE(abs(Real::parse(egf["value"].get<std::string>(), 256) - closed), Real(1e-10, 64));

  const auto ogf = nlohmann::json::parse(run({"ogf", "--poly", "1:1", "--x", "1", "--lambda", "-0.5"}).out);
  EXPECT_EQ(Real::parse(ogf["value"].get<std::string>(), 256).to_string(12), "0.735758882343");
}

TEST(Cli, PoleExitsWithJsonError) {
  const auto r = run({"ogf", "--poly", "1:1", "--x", "1", "--lambda", "1/3"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["error"], "pole");
  EXPECT_EQ(j["k"], 3);
}

TEST(Cli, DivergenceExitsWithJsonError) {
  const auto r = run({"egf", "--poly", "2:1", "--x", "1", "--lambda", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["error"], "divergence");
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bell"},
           {"bell", "--n", "x"},
           {"frobnicate"},
           {"stirling-type", "--poly", "1:1,1:2", "--n", "2"},
           {"stirling-type", "--poly", "0:0", "--n", "2"},
           {"dobinski", "--poly", "1:1", "--n", "2", "--x", "-1"},
           {"dobinski", "--poly", "1:1", "--n", "2", "--x", "1", "--tol", "2"},
           {"comb", "--poly", "1:1", "--x", "1", "--ymin", "10", "--ymax", "9"},
           {"verify", "--grid", "medium"},
           {"bell", "--n", "3", "--bits", "4"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << testing::PrintToString(args);
    EXPECT_EQ(lines(r.err).size(), 1u) << testing::PrintToString(args);
    EXPECT_TRUE(r.out.empty()) << testing::PrintToString(args);
  }
}

TEST(Cli, FigureComb) {
  const auto r = run({"comb", "--poly", "1:1", "--x", "1", "--ymin", "0", "--ymax", "5"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "location,weight");
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_EQ(rows[k + 1].substr(0, 2), std::to_string(k) + ",");
  EXPECT_EQ(rows[6].substr(2, 14), "0.003065662009");
}

TEST(Cli, CombClassifyAndRange) {
  EXPECT_EQ(run({"comb", "--poly", "1:1", "--x", "1", "--classify"}).out, "Stieltjes\n");
  EXPECT_EQ(run({"comb", "--poly", "0:5", "--x", "1", "--classify"}).out, "Hausdorff\n");
  const auto both = lines(run({"comb", "--poly", "0:-1,1:1", "--x", "1", "--classify", "--ymin", "-2", "--ymax", "1"}).out);
  ASSERT_EQ(both.size(), 5u);
  EXPECT_EQ(both[0], "Hamburger");
  EXPECT_EQ(both[1], "location,weight");
  EXPECT_EQ(both[2].substr(0, 3), "-1,");
  // An open upper end keeps every retained atom from ymin on.
  const auto open = lines(run({"comb", "--poly", "1:1", "--x", "1", "--ymin", "3"}).out);
  EXPECT_GT(open.size(), 10u);
  EXPECT_EQ(open[1].substr(0, 2), "3,");
}

TEST(Cli, OutFileAndBits) {
  const auto path = std::filesystem::temp_directory_path() / "dobinski_cli_test.txt";
  const auto r = run({"--out", path.string(), "bell", "--n", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(content, "877\n");
  std::filesystem::remove(path);

  const auto low = nlohmann::json::parse(run({"dobinski", "--bits", "64", "--poly", "1:1", "--n", "2", "--x", "1"}).out);
  EXPECT_EQ(low["precision_bits"], 64);
}

TEST(Cli, BitsFromEnvironment) {
  ::setenv("DOBINSKI_BITS", "128", 1);
  const auto j = nlohmann::json::parse(run({"dobinski", "--poly", "1:1", "--n", "2", "--x", "1"}).out);
  ::unsetenv("DOBINSKI_BITS");
  EXPECT_EQ(j["precision_bits"], 128);
}

TEST(Cli, VerifySmallGridPasses) {
  const auto r = run({"verify", "--grid", "small"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto report = lines(r.out);
  ASSERT_EQ(report.size(), 10u);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(report[i].substr(0, 4), "PASS") << report[i];
}

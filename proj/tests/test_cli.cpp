#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "steklov/cli.hpp"

using namespace steklov;
using steklov::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("steklov_test_cli_" + name)).string();
}

int subprocess(const std::string& args) {
  const std::string cmd = std::string(STEKLOV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, SpectrumCountListsConstantPlusSmallest) {
  const auto r = run({"spectrum", "--h", "0.5", "--count", "80"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 82u);
  EXPECT_EQ(l[0], "index,family,nu,delta");
  EXPECT_EQ(l[1].substr(0, 8), "0,Const,");
  const auto zero = run({"spectrum", "--count", "0"});
  EXPECT_EQ(lines(zero.out).size(), 2u);
}

TEST(Cli, SpectrumPerFamilyIncludesXyAtUnitAspect) {
  const auto r = run({"spectrum", "--per-family", "1"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  EXPECT_EQ(l.size(), 10u);
  EXPECT_NE(r.out.find(",XY,0,1\n"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"solve", "--h", "0.8", "--g", "builtin:f2", "--M", "3", "--grid", "9"};
  EXPECT_EQ(run(args).out, run(args).out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(run(args).out, run(threaded).out);
}

TEST(Cli, ReferencePointsMatchTheFirstTable) {
  const auto r = run({"solve", "--g", "builtin:f1", "--per-family", "5", "--points", "paper"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "x,y,u,exact,error");
  for (std::size_t p = 0; p < 5; ++p) {
    std::istringstream row(l[p + 1]);
    std::string x, y, u;
    std::getline(row, x, ',');
    std::getline(row, y, ',');
    std::getline(row, u, ',');
    EXPECT_NEAR(std::stod(u), reference::kPointwiseF1.approx[2][p], 1e-4);
  }
}

TEST(Cli, RobinFromASidesFile) {
  const std::string data = temp_path("sides.json");
  const std::string grid = temp_path("grid.csv");
  const std::string coef = temp_path("coef.csv");
  {
    std::ofstream f(data);
    f << R"j({"sides": {"G1": "2*exp(1)*sin(y)", "G2": "exp(x)*(cos(1)+sin(1))", "G3": 0, "G4": "-exp(x)*(cos(1)+sin(1))"}})j";
  }
  const auto r = run({"solve", "--g", "file:" + data, "--kind", "robin", "--b", "1", "--global", "5", "--exact",
                      "exp(x)sin(y)", "--grid", "11", "--out", grid, "--coefficients", coef, "--full-precision"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(grid);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x,y,u,exact,error");
  double worst = 0.0;
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line); ++rows) worst = std::max(worst, std::abs(std::stod(line.substr(line.rfind(',') + 1))));
  EXPECT_EQ(rows, 121u);
  EXPECT_LT(worst, 0.05);
  std::ifstream cin(coef);
  std::getline(cin, header);
  EXPECT_EQ(header, "index,family,nu,delta,coefficient,weight");
  for (const auto& p : {data, grid, coef}) std::filesystem::remove(p);
}

TEST(Cli, PointsAndGridTogetherNeedAnOutputFile) {
  EXPECT_EQ(run({"solve", "--g", "builtin:f1", "--M", "2", "--points", "paper", "--grid", "5"}).code, 2);
  const std::string grid = temp_path("both.csv");
  const auto r = run({"solve", "--g", "builtin:f1", "--M", "2", "--points", "paper", "--grid", "5", "--out", grid});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 6u);
  std::filesystem::remove(grid);
}

TEST(Cli, GridCommandWritesOnlyTheGrid) {
  const auto r = run({"grid", "--g", "expr:x*y", "--kind", "dirichlet", "--M", "1", "--grid", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 10u);
  EXPECT_EQ(l[0], "x,y,u");
}

TEST(Cli, CheckIsReproducibleUnderASeed) {
  const auto a = run({"check", "--h", "0.8", "--M", "2", "--seed", "7"});
  const auto b = run({"check", "--h", "0.8", "--M", "2", "--seed", "7"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("all checks passed"), std::string::npos);
  const auto j = run({"check", "--h", "0.8", "--M", "2", "--seed", "8", "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_TRUE(json::parse(j.out)["all_passed"].get<bool>());
}

TEST(Cli, TablesReportAgreement) {
  const auto r = run({"tables", "--which", "11,8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 13u);
  EXPECT_NE(r.err.find("table 8 carries no numeric data"), std::string::npos);
  EXPECT_NE(r.err.find("summary: 12 of 12"), std::string::npos);
  const auto j = run({"tables", "--which", "11", "--format", "json"});
  EXPECT_EQ(json::parse(j.out).at(0)["table"], 11);
  EXPECT_EQ(run({"tables", "--which", "1", "--h", "0.5"}).code, 2);
  EXPECT_EQ(run({"tables", "--which", "15"}).code, 2);
}

TEST(Cli, SolvesOnACachedSpectrum) {
  const std::string cache = temp_path("spec.json");
  ASSERT_EQ(run({"spectrum", "--h", "0.5", "--M", "3", "--cache", cache}).code, 0);
  const auto a = run({"solve", "--h", "0.5", "--M", "3", "--g", "builtin:f3", "--grid", "6"});
  const auto b = run({"solve", "--load", cache, "--g", "builtin:f3", "--grid", "6"});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove(cache);
}

TEST(Cli, InvalidConfigurationsExitWithTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--g", "builtin:bd1", "--kind", "dirichlet", "--h", "1.5"}).code, 2);
  EXPECT_EQ(run({"solve", "--g", "expr:x +"}).code, 2);
  EXPECT_EQ(run({"solve", "--g", "expr:x", "--kind", "dirichlet", "--M", "0"}).code, 2);
  EXPECT_EQ(run({"solve", "--g", "expr:x"}).code, 2);
  EXPECT_EQ(run({"solve", "--g", "builtin:bd3", "--b", "2"}).code, 2);
  EXPECT_EQ(run({"solve", "--g", "builtin:bd1", "--kind", "dirichlet", "--corner-reduction"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--per-family", "2", "--global", "2"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"solve", "--bogus"}).code, 2);
  const auto neumann = run({"solve", "--g", "builtin:f1", "--kind", "neumann", "--M", "2"});
  EXPECT_EQ(neumann.code, 2);
  EXPECT_NE(neumann.err.find("boundary mean -0.8"), std::string::npos);
}

TEST(Cli, MissingFilesExitWithFive) {
  EXPECT_EQ(run({"solve", "--load", temp_path("absent.json"), "--g", "builtin:f1"}).code, 5);
  EXPECT_EQ(run({"spectrum", "--out", "/nonexistent-dir/x.csv"}).code, 5);
}

TEST(Cli, QuadratureFailureExitsWithFour) {
  EXPECT_EQ(run({"solve", "--g", "expr:1/abs(x-0.3)^0.95", "--kind", "dirichlet", "--M", "1", "--abstol", "1e-14",
                 "--reltol", "1e-14", "--grid", "3"})
                .code,
            4);
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("spectrum"), std::string::npos);
}

TEST(CliProcess, ExitCodesReachTheShell) {
  EXPECT_EQ(subprocess("spectrum --count 3"), 0);
  EXPECT_EQ(subprocess("solve --g builtin:f1 --kind neumann --M 1"), 2);
  EXPECT_EQ(subprocess("solve --g 'expr:1/abs(x-0.3)^0.95' --kind dirichlet --M 1 --abstol 1e-14 --reltol 1e-14"), 4);
  EXPECT_EQ(subprocess("solve --load /nonexistent.json --g builtin:f1"), 5);
  EXPECT_EQ(subprocess("nonsense"), 2);
}

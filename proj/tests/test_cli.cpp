#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "cubic/cli.hpp"
#include "cubic/ideal_hnf.hpp"
#include "cubic/io.hpp"

using namespace cubic;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cubic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cubic_cli_test_" + name);
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(Cli, RootsSubcommand) {
  const auto r = run({"roots", "--mod", "91"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 3u);
  EXPECT_EQ(run({"roots"}).code, kConfigError);
}

TEST(Cli, RunWholeRingOnly) {
  const auto r = run({"run", "--max-norm", "1"});
  EXPECT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  const auto pts = read_points_csv(in);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].norm, 1);
  EXPECT_EQ(pts[0].m1, 1);
  EXPECT_EQ(pts[0].m2, 1);
}

TEST(Cli, RunRowCountMatchesIdeals) {
  const auto r = run({"run", "--max-norm", "10000"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), kPointsHeader);
  EXPECT_EQ(count_lines(r.out) - 1, enumerate_ideal_tuples(CubicPoly(-1, -2, 1), 10000).size());
}

TEST(Cli, RunRejectsBadPolynomials) {
  const auto r = run({"run", "--poly=-1,-2,-8"});
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("not totally real"), std::string::npos);
  EXPECT_EQ(run({"run", "--poly=0,0,-1"}).code, kConfigError);      // reducible
  EXPECT_EQ(run({"run", "--poly=-2,-8,8"}).code, kConfigError);      // Z[2 alpha], index 8
  EXPECT_EQ(run({"run", "--poly=x,y,z"}).code, kConfigError);
  EXPECT_EQ(run({"run", "--max-norm", "ten"}).code, kConfigError);
}

TEST(Cli, RunWritesFilesAndStatsRereadsThem) {
  const auto csv = temp_path("points.csv"), json = temp_path("report.json"),
             json2 = temp_path("report2.json");
  const auto r = run({"run", "--max-norm", "20000", "--out", csv.string(), "--report",
                      json.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream in(json);
  const auto rep = nlohmann::json::parse(in);
  EXPECT_GT(rep["n"].get<int>(), 1000);
  EXPECT_EQ(rep["cusp"].size(), 3u);
  const auto s = run({"stats", "--in", csv.string(), "--report", json2.string()});
  ASSERT_EQ(s.code, kOk) << s.err;
  std::ifstream in2(json2);
  const auto rep2 = nlohmann::json::parse(in2);
  EXPECT_EQ(rep2["n"], rep["n"]);
  // the CSV carries 15 significant digits
  EXPECT_NEAR(rep2["ks"]["s1"].get<double>(), rep["ks"]["s1"].get<double>(), 1e-12);
  EXPECT_EQ(run({"stats"}).code, kConfigError);
  std::filesystem::remove(csv);
  std::filesystem::remove(json);
  std::filesystem::remove(json2);
}

TEST(Cli, VerifySuites) {
  const auto ok = run({"verify", "--max-norm", "2000"});
  EXPECT_EQ(ok.code, kOk) << ok.out << ok.err;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
  const auto bad = run({"verify", "--max-norm", "2000", "--inject-wrong-lambda"});
  EXPECT_EQ(bad.code, kVerifyFailed);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyRingOnlyForNonMaximal) {
  const auto r = run({"verify", "--poly=-1,-2,-8"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("PASS obstruction"), std::string::npos);
  EXPECT_NE(r.out.find("not maximal"), std::string::npos);
}

TEST(Cli, UnitsAndSuppliedGenerators) {
  const auto r = run({"units"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("regulator 3.64045682604"), std::string::npos);
  const auto s = run({"units", "--eps1", "2,-1,0", "--eps2", "1,-2,1"});
  EXPECT_EQ(s.code, kOk) << s.err;
  EXPECT_EQ(run({"units", "--eps1", "2,0,0", "--eps2", "1,-2,1"}).code, kConfigError);
}

TEST(Cli, ConfigFile) {
  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream out(cfg);
    out << "# small run\nmax-norm = 13\n";
  }
  const auto r = run({"ideals", "--config", cfg.string()});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(count_lines(r.out), 6u);  // header + 5 ideals
  std::filesystem::remove(cfg);
}

TEST(Cli, ClassBasisParsing) {
  const auto b = parse_class_basis("0,0,1;0,1,0;1,0,0");
  EXPECT_EQ(b.basis[0], OrderElement::from_int(0, 0, 1));
  EXPECT_EQ(b.basis[2], OrderElement::from_int(1, 0, 0));
  EXPECT_THROW(parse_class_basis("1,0,0;0,1,0"), ParseError);
}

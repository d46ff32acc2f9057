#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpcav/cli.hpp"

using namespace cpcav::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cpcav");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, ProfileTwoPointGrid) {
  const Result r = run_cli({"profile", "--width", "500um", "-n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"z_m", "U_nr_J", "U_pr_J", "U_ev_J", "U_total_J"}));
  const double z0 = std::stod(rows[1][0]);
  const double z1 = std::stod(rows[2][0]);
  EXPECT_LT(z0, z1);
  EXPECT_NEAR(z1, 0.49 * 500e-6, 1e-15);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 5u);
    for (const auto& cell : rows[i]) EXPECT_NO_THROW((void)std::stod(cell));
  }
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, ProfileShiftedAtCentre) {
  const Result r = run_cli({"profile", "--width", "500um", "-n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  for (std::size_t c = 1; c < 5; ++c) EXPECT_EQ(std::stod(rows[2][c]), 0.0);
  const Result raw = run_cli({"profile", "--width", "500um", "-n", "3", "--raw"});
  EXPECT_NE(std::stod(parse_csv(raw.out)[2][1]), 0.0);
}

TEST(Cli, ResonanceWidthResolves) {
  const Result r = run_cli({"profile", "--width", "resonance:2", "-n", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const double z_max = doc["rows"][1]["z_m"].get<double>();
  EXPECT_NEAR(z_max / 0.49, 2.0 * 3.141592653589793 * 2.99792458e8 / 2.78973e12, 1e-12);
}

TEST(Cli, JsonShape) {
  const Result r = run_cli({"--format", "json", "bragg", "--n-max", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["columns"][0], "N");
  EXPECT_EQ(doc["rows"].size(), 10u);
  EXPECT_TRUE(doc["meta"].contains("saturation_N"));
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"heating", "-n", "7", "--threads", "3"};
  const Result a = run_cli(args);
  const Result b = run_cli({"heating", "-n", "7", "--threads", "1"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, run_cli(args).out);
}

TEST(Cli, DepthReportsPeakHeightForFirstResonance) {
  const Result r = run_cli({"depth", "--nu", "1", "--nu", "2", "--nu", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][3], "peak_height");
  EXPECT_EQ(rows[2][3], "well_depth");
  EXPECT_GT(std::stod(rows[2][4]), std::stod(rows[3][4]));
}

TEST(Cli, DepthFamilyOrderedByReflectivity) {
  const Result r = run_cli({"depth", "--mirror", "constant:0.99", "--mirror", "constant:0.9999", "--mirror",
                            "constant:0.999999", "--nu", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_LT(std::stod(rows[1][4]), std::stod(rows[2][4]));
  EXPECT_LT(std::stod(rows[2][4]), std::stod(rows[3][4]));
}

TEST(Cli, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "cpcav_cli_test.csv";
  const Result r = run_cli({"--out", path.string(), "bragg", "--n-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(parse_csv(text.str()).size(), 4u);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigSuppliesMolecules) {
  const auto path = std::filesystem::temp_directory_path() / "cpcav_cli_test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "[molecule:YbF-vib]\ntransition = 9e10, 1e-58\n";
  }
  const Result r = run_cli({"--config", path.string(), "depth", "--molecule", "YbF-vib", "--nu", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"frobnicate"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"profile", "--molecule", "CaF"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"profile", "--mirror", "silver"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"profile", "-n", "1"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"profile", "--width", "wide"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"--format", "xml", "bragg"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"asym", "--nu-min", "5", "--nu-max", "3"}).code, ExitCode::usage_error);
  EXPECT_EQ(run_cli({"bragg", "--n-min", "9", "--n-max", "3"}).code, ExitCode::usage_error);
  const Result r = run_cli({"depth", "--nu", "0"});
  EXPECT_EQ(r.code, ExitCode::usage_error);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, NumericalFailureExitCode) {
  const Result r = run_cli({"--max-subdivisions", "1", "profile", "-n", "2"});
  EXPECT_EQ(r.code, ExitCode::numerical_failure) << r.err;
}

TEST(Cli, HelpSucceeds) { EXPECT_EQ(run_cli({"--help"}).code, ExitCode::ok); }

TEST(Csv, FormatsCells) {
  Table t{{"a", "b", "c"}, {{1.5, 2LL, std::string("x")}, {0.1, -3LL, std::string("y;z")}}, {}};
  std::ostringstream out;
  write_csv(out, t);
  EXPECT_EQ(out.str(), "a,b,c\n1.5,2,x\n0.10000000000000001,-3,y;z\n");
}

TEST(Json, NonFiniteBecomesNull) {
  Table t{{"v"}, {{std::nan("")}}, {{"k", 1LL}}};
  std::ostringstream out;
  write_json(out, t);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_TRUE(doc["rows"][0]["v"].is_null());
  EXPECT_EQ(doc["meta"]["k"], 1);
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "bandspec/cli.hpp"

using namespace bandspec::cli;
namespace fs = std::filesystem;

namespace {

const std::string kSamples = BANDSPEC_SAMPLES_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig verify_config(const std::string& file, std::size_t n_max) {
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.matrix_path = kSamples + "/" + file;
  cfg.n_max = n_max;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "bandspec_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(BANDSPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, VerifyFreeJacobi) {
  auto cfg = verify_config("free_jacobi.json", 8);
  cfg.case_tag = bandspec::Case::A;
  cfg.report_path = scratch("verify.json").string();
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("max residual"), std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(*cfg.report_path));
  EXPECT_LE(doc["max_residual"].get<double>(), 1e-8);
  EXPECT_EQ(doc["relation"], "integral_orthonormality");
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(Cli, VerifyCaseB) {
  auto cfg = verify_config("monic_pentadiagonal.json", 12);
  cfg.out_path = scratch("verify_b.csv").string();
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  const auto csv = slurp(*cfg.out_path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,m,re,im,abs");
}

TEST(Cli, VerifyDoublePrecision) {
  auto cfg = verify_config("free_jacobi.json", 4);
  cfg.precision = Precision::double_;
  EXPECT_EQ(invoke(cfg).code, kExitOk);
  cfg.n_max = 8;
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitFailed) << "double precision loses about r^d digits";
}

TEST(Cli, ToleranceFailureExitsOne) {
  auto cfg = verify_config("free_jacobi.json", 4);
  cfg.tolerances["residual"] = 1e-300;
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ValidateBrokenListsViolations) {
  RunConfig cfg;
  cfg.command = Command::validate;
  cfg.matrix_path = kSamples + "/broken.json";
  cfg.case_tag = bandspec::Case::A;
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_NE(r.out.find("not symmetric at (1,2)"), std::string::npos);
}

TEST(Cli, InvalidMatrixStopsComputation) {
  auto cfg = verify_config("broken.json", 2);
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_NE(r.out.find("not valid"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke(verify_config("missing.json", 4)).code, kExitUsage);

  RunConfig no_matrix;
  no_matrix.command = Command::verify;
  no_matrix.n_max = 3;
  EXPECT_EQ(invoke(no_matrix).code, kExitUsage);

  auto no_nmax = verify_config("free_jacobi.json", 1);
  no_nmax.n_max.reset();
  EXPECT_EQ(invoke(no_nmax).code, kExitUsage);

  RunConfig bad_c;
  bad_c.command = Command::rank_one;
  bad_c.c = "0.3;0.4";
  EXPECT_EQ(invoke(bad_c).code, kExitUsage);

  RunConfig small_alpha;
  small_alpha.command = Command::rank_one;
  small_alpha.c = "0.3,0.4";
  small_alpha.alphas = {"1.5"};
  EXPECT_EQ(invoke(small_alpha).code, kExitUsage);

  const auto bad_json = scratch("bad.json");
  std::ofstream(bad_json) << "{\"N\": 1, \"diagonals\": ";
  RunConfig parse;
  parse.command = Command::validate;
  parse.matrix_path = bad_json.string();
  parse.case_tag = bandspec::Case::A;
  EXPECT_EQ(invoke(parse).code, kExitUsage);
}

TEST(Cli, PolysAndMoments) {
  RunConfig cfg;
  cfg.command = Command::polys;
  cfg.matrix_path = kSamples + "/free_jacobi.json";
  cfg.K = 3;
  auto r = invoke(cfg);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["polynomials"][3]["coeffs"], nlohmann::json::parse("[[0,0],[-2,0],[0,0],[1,0]]"));

  cfg.command = Command::moments;
  cfg.K.reset();
  cfg.d = 2;
  r = invoke(cfg);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[2]["k"], 2);
  EXPECT_EQ(doc[2]["S"], nlohmann::json::parse("[[[1,0]]]"));
}

TEST(Cli, Density) {
  RunConfig cfg;
  cfg.command = Command::density;
  cfg.matrix_path = kSamples + "/rank_one.json";
  cfg.K = 6;
  cfg.node_count = 256;
  cfg.out_path = scratch("density.csv").string();
  cfg.report_path = scratch("density.json").string();
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  const auto csv = slurp(*cfg.out_path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta,min_eigenvalue,w_0_0_re,w_0_0_im");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 257);
  EXPECT_TRUE(nlohmann::json::parse(slurp(*cfg.report_path))["passed"].get<bool>());
}

TEST(Cli, RankOneWritesBothTables) {
  RunConfig cfg;
  cfg.command = Command::rank_one;
  cfg.c = "0.5,0";
  cfg.alphas = {"2.5"};
  cfg.n_max = 4;
  cfg.node_count = 512;
  cfg.out_path = scratch("rank_one.csv").string();
  const auto r = invoke(cfg);
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  const auto weights = slurp(*cfg.out_path);
  EXPECT_EQ(weights.substr(0, weights.find('\n')), "alpha,theta,re_p,im_p");
  const auto residuals = slurp(scratch("rank_one_residuals.csv"));
  EXPECT_EQ(residuals.substr(0, residuals.find('\n')), "relation,alpha,n,m,residual");
}

TEST(Cli, Deterministic) {
  auto cfg = verify_config("monic_pentadiagonal.json", 6);
  cfg.out_path = scratch("det.csv").string();
  cfg.report_path = scratch("det.json").string();
  const auto first = invoke(cfg);
  const auto csv = slurp(*cfg.out_path);
  const auto report = slurp(*cfg.report_path);
  const auto second = invoke(cfg);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(csv, slurp(*cfg.out_path));
  EXPECT_EQ(report, slurp(*cfg.report_path));
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(shell("verify --matrix " + kSamples + "/free_jacobi.json --case A --nmax 8"), 0);
  EXPECT_EQ(shell("validate --matrix " + kSamples + "/broken.json --case A"), 1);
  EXPECT_EQ(shell("verify --matrix " + kSamples + "/missing.json --case A --nmax 8"), 2);
  EXPECT_EQ(shell("verify --matrix " + kSamples + "/free_jacobi.json --case Q --nmax 8"), 2);
  EXPECT_EQ(shell("frobnicate"), 2);
  EXPECT_EQ(shell("--help"), 0);
}

TEST(CliBinary, RankOneExample) {
  const auto out = scratch("binary_rank_one.csv").string();
  EXPECT_EQ(shell("rank-one --c 0.3,0.4 --alpha 3 --nmax 10 --nodes 8192 --out " + out), 0);
}

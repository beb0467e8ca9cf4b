#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "bandspec/cli.hpp"

namespace {

using bandspec::cli::Command;
using bandspec::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& precision, std::map<std::string, double>& tols) {
  sub->add_option("--precision", precision, "arithmetic: extended (default) or double")
      ->check(CLI::IsMember({"extended", "double"}));
  sub->add_option("--out", cfg.out_path, "output file (CSV or JSON depending on command)");
  sub->add_option("--report", cfg.report_path, "JSON report path");
  sub->add_option("--tol", tols, "tolerance override key=value (repeatable)")->delimiter(',');
}

void add_matrix(CLI::App* sub, RunConfig& cfg, std::string& case_text) {
  sub->add_option("--matrix", cfg.matrix_path, "matrix description (JSON)")->required();
  sub->add_option("--case", case_text, "A (symmetric) or B (monic); defaults to the file's case")
      ->check(CLI::IsMember({"A", "B"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral functions of banded matrices"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string precision = "extended";
  std::string case_text;
  std::map<std::string, double> tols;

  auto* validate = app.add_subcommand("validate", "check the structural conditions of a matrix");
  add_matrix(validate, cfg, case_text);
  validate->add_option("--rows", cfg.rows, "rows to check (default: all rows of finite data, else 50)");

  auto* polys = app.add_subcommand("polys", "polynomial solutions p_0..p_K as JSON");
  add_matrix(polys, cfg, case_text);
  polys->add_option("--K", cfg.K, "highest degree")->required();

  auto* moments = app.add_subcommand("moments", "moment blocks S_0..S_d as JSON");
  add_matrix(moments, cfg, case_text);
  moments->add_option("--d", cfg.d, "table extent");
  moments->add_option("--K", cfg.K, "degree to support (sets d = ceil(2K/N)+1)");

  auto* density = app.add_subcommand("density", "matrix density on the circle and its checks");
  add_matrix(density, cfg, case_text);
  density->add_option("--d", cfg.d, "table extent");
  density->add_option("--K", cfg.K, "degree to support (sets d = ceil(2K/N)+1)");
  density->add_option("--nodes", cfg.node_count, "evaluation grid size (default 4096)");

  auto* verify = app.add_subcommand("verify", "integral orthogonality against the density");
  add_matrix(verify, cfg, case_text);
  verify->add_option("--nmax", cfg.n_max, "highest degree checked")->required();
  verify->add_option("--d", cfg.d, "table extent (default ceil(2 nmax/N)+1)");

  auto* rank_one = app.add_subcommand("rank-one", "rank-one perturbation of the free Jacobi matrix");
  rank_one->add_option("--c", cfg.c, "perturbation re,im")->required();
  rank_one->add_option("--alpha", cfg.alphas, "circle radii (default {1.25,1.5,2,3} R0)")->delimiter(',');
  rank_one->add_option("--nmax", cfg.n_max, "highest degree checked (default 8)");
  rank_one->add_option("--nodes", cfg.node_count, "quadrature nodes, power of two (default 2048)");
  rank_one->add_option("--residuals", cfg.residuals_path, "residual CSV (default <out>_residuals.csv)");

  for (auto* sub : {validate, polys, moments, density, verify, rank_one}) add_common(sub, cfg, precision, tols);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bandspec::cli::kExitUsage;
  }

  if (*validate) cfg.command = Command::validate;
  if (*polys) cfg.command = Command::polys;
  if (*moments) cfg.command = Command::moments;
  if (*density) cfg.command = Command::density;
  if (*verify) cfg.command = Command::verify;
  if (*rank_one) cfg.command = Command::rank_one;
  cfg.precision = precision == "double" ? bandspec::cli::Precision::double_ : bandspec::cli::Precision::extended;
  if (!case_text.empty()) cfg.case_tag = bandspec::parse_case(case_text);
  cfg.tolerances = tols;
  return bandspec::cli::run(cfg, std::cout, std::cerr);
}

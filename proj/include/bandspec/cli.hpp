#ifndef BANDSPEC_CLI_HPP
#define BANDSPEC_CLI_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bandspec/banded.hpp"
#include "bandspec/circle_measure.hpp"
#include "bandspec/errors.hpp"
#include "bandspec/matrix_io.hpp"
#include "bandspec/rank_one.hpp"
#include "bandspec/report.hpp"
#include "bandspec/spectral.hpp"

namespace bandspec::cli {

enum class Command { validate, polys, moments, density, verify, rank_one };
enum class Precision { double_, extended };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::validate;
  Precision precision = Precision::extended;
  std::optional<std::string> matrix_path;
  std::optional<Case> case_tag;
  std::optional<std::size_t> K;
  std::optional<std::size_t> d;
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> node_count;
  std::optional<std::size_t> rows;
  std::optional<std::string> c;  ///< "re,im"
  std::vector<std::string> alphas;
  std::optional<std::string> out_path;
  std::optional<std::string> report_path;
  std::optional<std::string> residuals_path;
  /// Keys: residual, eta, contour, imag, orthogonality, negative_moment, moment, positivity.
  std::map<std::string, double> tolerances;
};

inline double tolerance(const RunConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.tolerances.find(key);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ArgumentError(message);
}

template <class Real>
Complex<Real> parse_complex_arg(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return Complex<Real>(parse_real<Real>(text));
    return Complex<Real>(parse_real<Real>(text.substr(0, comma)), parse_real<Real>(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse complex value '" + text + "' (expected re,im)");
  }
}

template <class Real>
Real parse_real_arg(const std::string& text) {
  try {
    return parse_real<Real>(text);
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse number '" + text + "'");
  }
}

template <class Real>
struct LoadedMatrix {
  MatrixSpec<Real> spec;
  Case case_tag;
};

template <class Real>
LoadedMatrix<Real> load(const RunConfig& cfg) {
  require(cfg.matrix_path.has_value(), "--matrix is required");
  auto spec = load_matrix_spec<Real>(*cfg.matrix_path);
  std::optional<Case> c = cfg.case_tag ? cfg.case_tag : spec.case_tag;
  require(c.has_value(), "--case is required (the matrix file does not name one)");
  return {std::move(spec), *c};
}

inline nlohmann::json violations_json(const ValidationReport& r) {
  auto out = nlohmann::json::array();
  for (const auto& v : r.violations) out.push_back({{"row", v.row}, {"col", v.col}, {"message", v.message}});
  return out;
}

/// Validates the rows a computation needs; prints violations and returns false if any.
template <class Real>
bool precheck(const BandedMatrix<Real>& J, Case c, std::size_t rows, std::ostream& out) {
  const auto r = validate(J, c, rows);
  if (r.valid()) return true;
  out << "matrix is not valid for case " << to_string(c) << ":\n";
  for (const auto& v : r.violations) out << "  " << v.message << '\n';
  return false;
}

template <class Real>
SpectralTable<Real> build_table(const PolynomialSystem<Real>& sys, std::size_t d) {
  return sys.case_tag == Case::A ? build_table_case_A(sys, d) : build_table_case_B(sys, d);
}

inline std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

inline void emit_json(const RunConfig& cfg, const nlohmann::json& doc, std::ostream& out) {
  if (cfg.out_path)
    write_json_file(*cfg.out_path, doc);
  else
    out << doc.dump(2) << '\n';
}

template <class Real>
int run_validate(const RunConfig& cfg, std::ostream& out) {
  const auto m = load<Real>(cfg);
  const auto& J = m.spec.matrix;
  std::size_t rows = cfg.rows ? *cfg.rows : 50;
  if (!cfg.rows && J.row_extent()) rows = *J.row_extent();
  const auto r = validate(J, m.case_tag, rows);
  out << "validate case " << to_string(m.case_tag) << " N=" << J.half_width() << ": " << r.rows_checked
      << " rows checked, " << r.violations.size() << " violation(s)\n";
  for (const auto& v : r.violations) out << "  " << v.message << '\n';
  for (const auto& h : r.unchecked_hypotheses) out << "  unchecked: " << h << '\n';
  if (cfg.report_path)
    write_json_file(*cfg.report_path, {{"command", "validate"},
                                       {"case", to_string(m.case_tag)},
                                       {"N", J.half_width()},
                                       {"rows_checked", r.rows_checked},
                                       {"valid", r.valid()},
                                       {"violations", violations_json(r)},
                                       {"unchecked_hypotheses", r.unchecked_hypotheses}});
  return r.valid() ? kExitOk : kExitFailed;
}

template <class Real>
int run_polys(const RunConfig& cfg, std::ostream& out) {
  require(cfg.K.has_value(), "--K is required");
  const auto m = load<Real>(cfg);
  const auto& J = m.spec.matrix;
  const std::size_t N = J.half_width();
  if (!precheck(J, m.case_tag, *cfg.K >= N ? *cfg.K - N + 1 : 0, out)) return kExitFailed;
  const auto sys = solve_polynomials(J, m.case_tag, *cfg.K);
  auto polys = nlohmann::json::array();
  for (std::size_t n = 0; n <= sys.max_degree(); ++n)
    polys.push_back({{"n", n}, {"leading", complex_json(sys.leading[n])}, {"coeffs", polynomial_json(sys[n])}});
  emit_json(cfg, {{"N", N}, {"case", to_string(m.case_tag)}, {"polynomials", polys},
                  {"warnings", conditioning_warnings(sys)}},
            out);
  return kExitOk;
}

template <class Real>
struct TableRun {
  PolynomialSystem<Real> sys;
  SpectralTable<Real> table;
};

template <class Real>
std::optional<TableRun<Real>> table_for(const LoadedMatrix<Real>& m, std::size_t d, std::ostream& out) {
  const auto& J = m.spec.matrix;
  const std::size_t N = J.half_width();
  const std::size_t degree = table_degree_requirement(d, N);
  if (!precheck(J, m.case_tag, degree - N + 1, out)) return std::nullopt;
  auto sys = solve_polynomials(J, m.case_tag, degree);
  auto table = build_table(sys, d);
  for (const auto& w : table.warnings) out << "warning: " << w << '\n';
  return TableRun<Real>{std::move(sys), std::move(table)};
}

inline std::size_t extent_from(const RunConfig& cfg, std::size_t N) {
  if (cfg.d) return *cfg.d;
  require(cfg.K.has_value(), "either --d or --K is required");
  return default_table_extent(*cfg.K, N);
}

template <class Real>
int run_moments(const RunConfig& cfg, std::ostream& out) {
  const auto m = load<Real>(cfg);
  const std::size_t d = extent_from(cfg, m.spec.matrix.half_width());
  std::ostringstream log;
  const auto t = table_for(m, d, log);
  if (!t) {
    out << log.str();
    return kExitFailed;
  }
  auto blocks = nlohmann::json::array();
  for (std::size_t k = 0; k <= d; ++k) blocks.push_back({{"k", k}, {"S", matrix_json(t->table.block(k))}});
  if (cfg.out_path) out << log.str();
  emit_json(cfg, blocks, out);
  return kExitOk;
}

template <class Real>
int run_density(const RunConfig& cfg, std::ostream& out) {
  const auto m = load<Real>(cfg);
  const std::size_t N = m.spec.matrix.half_width();
  const std::size_t d = extent_from(cfg, N);
  const auto t = table_for(m, d, out);
  if (!t) return kExitFailed;
  const auto W = build_density(t->table);
  const double moment_tol = tolerance(cfg, "moment", 1e-10);
  bool moments_ok = true;
  double worst = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    try {
      const auto Mk = density_moment(W, k, moment_tol);
      worst = std::max(worst, to_double((Mk - t->table.block(k)).max_abs()));
    } catch (const ConsistencyError& e) {
      out << e.what() << '\n';
      moments_ok = false;
    }
  }
  const std::size_t grid = cfg.node_count ? *cfg.node_count : 4096;
  const double min_eig = min_eigenvalue_on_grid(W, grid);
  const double threshold = tolerance(cfg, "positivity", 0.49) / to_double(two_pi<Real>());
  const bool positive = min_eig >= threshold;
  out << "density N=" << N << " d=" << d << " radius=" << format_double(to_double(W.radius()))
      << ": moment mismatch " << format_double(worst) << " " << pass(moments_ok) << ", min eigenvalue "
      << format_double(min_eig) << " on " << grid << " points (threshold " << format_double(threshold) << ") "
      << pass(positive) << '\n';
  if (cfg.out_path) {
    std::vector<std::string> header{"theta", "min_eigenvalue"};
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        header.push_back("w_" + std::to_string(a) + "_" + std::to_string(b) + "_re");
        header.push_back("w_" + std::to_string(a) + "_" + std::to_string(b) + "_im");
      }
    CsvWriter csv(*cfg.out_path, header);
    const auto roots = roots_of_unity<Real>(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      const auto w = W.at_node(j, roots);
      std::vector<std::string> row{format_double(to_double(Real(two_pi<Real>() * Real(j) / Real(grid)))),
                                   format_double(hermitian_min_eigenvalue(w))};
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          const auto v = to_double(w(a, b));
          row.push_back(format_double(v.real()));
          row.push_back(format_double(v.imag()));
        }
      csv.write_row(row);
    }
  }
  if (cfg.report_path) {
    auto coeffs = nlohmann::json::array();
    for (std::size_t k = 0; k <= d; ++k) coeffs.push_back({{"k", -static_cast<long>(k)}, {"C", matrix_json(W.coefficient(-static_cast<long>(k)))}});
    write_json_file(*cfg.report_path, {{"command", "density"},
                                       {"case", to_string(m.case_tag)},
                                       {"N", N},
                                       {"extent", d},
                                       {"radius", to_double(W.radius())},
                                       {"relation", "moment_interpolation"},
                                       {"max_moment_mismatch", worst},
                                       {"moments_ok", moments_ok},
                                       {"grid", grid},
                                       {"min_eigenvalue", min_eig},
                                       {"positivity_threshold", threshold},
                                       {"coefficients", coeffs},
                                       {"passed", moments_ok && positive}});
  }
  return moments_ok && positive ? kExitOk : kExitFailed;
}

template <class Real>
int run_verify(const RunConfig& cfg, std::ostream& out) {
  require(cfg.n_max.has_value(), "--nmax is required");
  const auto m = load<Real>(cfg);
  const std::size_t N = m.spec.matrix.half_width();
  const std::size_t n_max = *cfg.n_max;
  const std::size_t d = cfg.d ? *cfg.d : default_table_extent(n_max, N);
  const auto t = table_for(m, d, out);
  if (!t) return kExitFailed;
  const auto W = build_density(t->table);
  const auto r = verify_orthogonality(t->sys, t->table, W, n_max);
  const double tol = tolerance(cfg, "residual", 1e-8);
  const double eta_tol = tolerance(cfg, "eta", 1e-6);
  bool ok = r.max_residual <= tol;
  bool eta_ok = true;
  if (m.case_tag == Case::B) {
    ok = r.max_offdiagonal_residual <= tol;
    for (const auto& e : r.eta) eta_ok = eta_ok && std::abs(e) > eta_tol;
  }
  const std::string relation = m.case_tag == Case::A ? "integral_orthonormality" : "integral_left_orthogonality";
  out << "verify case " << to_string(m.case_tag) << " N=" << N << " n_max=" << n_max << " d=" << d
      << " radius=" << format_double(to_double(W.radius())) << " nodes=" << r.nodes << '\n';
  if (m.case_tag == Case::A) {
    out << "  " << relation << ": max residual " << format_double(r.max_residual) << " (tol " << format_double(tol)
        << ") " << pass(ok) << '\n';
  } else {
    double min_eta = std::numeric_limits<double>::infinity();
    for (const auto& e : r.eta) min_eta = std::min(min_eta, std::abs(e));
    out << "  " << relation << ": max off-diagonal residual " << format_double(r.max_offdiagonal_residual)
        << " (tol " << format_double(tol) << ") " << pass(ok) << '\n';
    out << "  eta: min |eta_n| " << format_double(min_eta) << " (must exceed " << format_double(eta_tol) << ") "
        << pass(eta_ok) << ", max deviation from table pairing " << format_double(r.max_residual) << '\n';
  }
  out << "  certified for n <= " << r.certified_n_max << " with moments S_0..S_" << d << '\n';
  if (cfg.out_path) {
    CsvWriter csv(*cfg.out_path, {"n", "m", "re", "im", "abs"});
    for (const auto& e : r.entries)
      csv.write_row({std::to_string(e.n), std::to_string(e.m), format_double(e.residual.real()),
                     format_double(e.residual.imag()), format_double(std::abs(e.residual))});
  }
  if (cfg.report_path) {
    auto entries = nlohmann::json::array();
    for (const auto& e : r.entries)
      entries.push_back({{"n", e.n},
                         {"m", e.m},
                         {"relation", e.n == e.m && m.case_tag == Case::B ? "eta_table_consistency" : relation},
                         {"value", complex_json(e.value)},
                         {"expected", complex_json(e.expected)},
                         {"residual", complex_json(e.residual)},
                         {"abs", std::abs(e.residual)}});
    auto eta = nlohmann::json::array();
    for (const auto& e : r.eta) eta.push_back(complex_json(e));
    write_json_file(*cfg.report_path, {{"command", "verify"},
                                       {"case", to_string(m.case_tag)},
                                       {"N", N},
                                       {"n_max", n_max},
                                       {"table_extent", d},
                                       {"radius", to_double(W.radius())},
                                       {"nodes", r.nodes},
                                       {"relation", relation},
                                       {"certified_n_max", r.certified_n_max},
                                       {"max_residual", r.max_residual},
                                       {"max_offdiagonal_residual", r.max_offdiagonal_residual},
                                       {"tolerance", tol},
                                       {"eta", eta},
                                       {"passed", ok && eta_ok},
                                       {"entries", entries}});
  }
  return ok && eta_ok ? kExitOk : kExitFailed;
}

inline std::string residuals_path_for(const std::string& out) {
  const auto dot = out.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == out.size()) return out.substr(0, dot) + "_residuals.csv";
  return out + "_residuals.csv";
}

template <class Real>
int run_rank_one(const RunConfig& cfg, std::ostream& out) {
  require(cfg.c.has_value(), "--c is required");
  const RankOneModel<Real> model(parse_complex_arg<Real>(*cfg.c));
  const std::size_t n_max = cfg.n_max ? *cfg.n_max : 8;
  const std::size_t nodes = cfg.node_count ? *cfg.node_count : 2048;
  require(nodes >= 8 && std::has_single_bit(nodes), "--nodes must be a power of two >= 8");
  std::vector<Real> alphas;
  for (const auto& a : cfg.alphas) alphas.push_back(parse_real_arg<Real>(a));
  if (alphas.empty()) alphas = default_alphas(model);
  for (const auto& a : alphas)
    require(a > model.R0(), "every alpha must exceed R0 = " + format_double(to_double(model.R0())));

  const double contour_tol = tolerance(cfg, "contour", 1e-7);
  const double imag_tol = tolerance(cfg, "imag", 1e-9);
  const double orth_tol = tolerance(cfg, "orthogonality", 1e-6);
  const double neg_tol = tolerance(cfg, "negative_moment", 1e-8);

  out << "rank-one c=" << format_double(to_double(model.c()).real()) << "," << format_double(to_double(model.c()).imag())
      << " R0=" << format_double(to_double(model.R0())) << " n_max=" << n_max << " nodes=" << nodes << '\n';
  bool ok = true;
  std::vector<ContourReport> contours;
  for (const auto& a : alphas) {
    contours.push_back(contour_orthogonality(model, a, n_max, nodes));
    const auto& c = contours.back();
    const bool pass_c = c.max_residual <= contour_tol;
    ok = ok && pass_c;
    out << "  contour_orthogonality R=" << format_double(c.radius) << ": max residual "
        << format_double(c.max_residual) << " (tol " << format_double(contour_tol) << ") " << pass(pass_c) << '\n';
  }
  const auto scan = alpha_scan(model, alphas, nodes, n_max);
  for (const auto& e : scan.entries) {
    const bool real_ok = e.max_imag <= imag_tol;
    const bool orth_ok = e.orthogonality_residual <= orth_tol;
    const bool neg_ok = e.negative_moment_residual <= neg_tol;
    ok = ok && real_ok && orth_ok && neg_ok;
    out << "  alpha=" << format_double(e.alpha) << ": min re p " << format_double(e.min_real) << " ("
        << (e.nonnegative ? "nonnegative" : "negative") << "), max |im p| " << format_double(e.max_imag) << " "
        << pass(real_ok) << ", circle_orthogonality " << format_double(e.orthogonality_residual) << " "
        << pass(orth_ok) << ", negative_moments " << format_double(e.negative_moment_residual) << " "
        << pass(neg_ok) << '\n';
  }
  out << "  nonnegative weight found: " << (scan.any_nonnegative() ? "yes" : "no") << '\n';

  if (cfg.out_path) {
    CsvWriter csv(*cfg.out_path, {"alpha", "theta", "re_p", "im_p"});
    for (const auto& e : scan.entries)
      for (std::size_t j = 0; j < e.theta.size(); ++j)
        csv.write_row({format_double(e.alpha), format_double(e.theta[j]), format_double(e.p[j].real()),
                       format_double(e.p[j].imag())});
    CsvWriter res(cfg.residuals_path ? *cfg.residuals_path : residuals_path_for(*cfg.out_path),
                  {"relation", "alpha", "n", "m", "residual"});
    for (const auto& c : contours)
      for (const auto& r : c.entries)
        res.write_row({"contour_orthogonality", format_double(c.radius), std::to_string(r.n), std::to_string(r.m),
                       format_double(r.residual)});
    for (const auto& e : scan.entries)
      for (const auto& r : e.residuals)
        res.write_row({"circle_orthogonality", format_double(e.alpha), std::to_string(r.n), std::to_string(r.m),
                       format_double(r.residual)});
  }
  if (cfg.report_path) {
    auto cj = nlohmann::json::array();
    for (const auto& c : contours)
      cj.push_back({{"relation", "contour_orthogonality"}, {"radius", c.radius}, {"max_residual", c.max_residual}});
    auto sj = nlohmann::json::array();
    for (const auto& e : scan.entries)
      sj.push_back({{"alpha", e.alpha},
                    {"min_real", e.min_real},
                    {"max_imag", e.max_imag},
                    {"nonnegative", e.nonnegative},
                    {"circle_orthogonality", e.orthogonality_residual},
                    {"negative_moments", e.negative_moment_residual}});
    write_json_file(*cfg.report_path, {{"command", "rank-one"},
                                       {"c", complex_json(model.c())},
                                       {"R0", to_double(model.R0())},
                                       {"n_max", n_max},
                                       {"nodes", nodes},
                                       {"contour", cj},
                                       {"scan", sj},
                                       {"any_nonnegative", scan.any_nonnegative()},
                                       {"passed", ok}});
  }
  return ok ? kExitOk : kExitFailed;
}

template <class Real>
int dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::validate: return run_validate<Real>(cfg, out);
    case Command::polys: return run_polys<Real>(cfg, out);
    case Command::moments: return run_moments<Real>(cfg, out);
    case Command::density: return run_density<Real>(cfg, out);
    case Command::verify: return run_verify<Real>(cfg, out);
    case Command::rank_one: return run_rank_one<Real>(cfg, out);
  }
  return kExitUsage;
}

}  // namespace detail

/// Runs one command. Exit status: 0 all checks within tolerance, 1 a check or
/// validation failed, 2 bad arguments or unreadable input.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return cfg.precision == Precision::double_ ? detail::dispatch<double>(cfg, out)
                                               : detail::dispatch<Extended>(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace bandspec::cli

#endif  // BANDSPEC_CLI_HPP

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bandspec/banded.hpp"
#include "bandspec/circle_measure.hpp"
#include "bandspec/rank_one.hpp"
#include "bandspec/spectral.hpp"
#include "support/random_matrices.hpp"

using namespace bandspec;
using X = Extended;
using CX = Complex<X>;

namespace {

CX cx(double re, double im = 0) { return CX(X(re), X(im)); }

double dist(const CX& a, const CX& b) { return to_double(magnitude(CX(a - b))); }

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

struct CaseAFixture {
  std::size_t N;
  PolynomialSystem<X> sys;
  SpectralTable<X> full;     ///< covers degrees <= 24
  SpectralTable<X> density;  ///< extent ceil(24/N)+1
};

constexpr std::size_t kCaseAMatrices = 20;
constexpr std::size_t kCaseBMatrices = 10;
constexpr std::size_t kDegreeA = 24;
constexpr std::size_t kVerifyDegree = 12;

std::vector<CaseAFixture> case_a_fixtures() {
  std::vector<CaseAFixture> out;
  for (std::size_t i = 0; i < kCaseAMatrices; ++i) {
    const std::size_t N = 1 + i % 3;
    const std::size_t d_full = default_table_extent(kDegreeA, N);
    const std::size_t d_density = default_table_extent(kVerifyDegree, N);
    const std::size_t degree = table_degree_requirement(d_full, N);
    const auto J = testing_support::random_symmetric<X>(N, degree + 1, 1000 + i);
    auto sys = solve_polynomials(J, Case::A, degree);
    auto full = build_table_case_A(sys, d_full);
    auto density = build_table_case_A(sys, d_density);
    out.push_back({N, std::move(sys), std::move(full), std::move(density)});
  }
  return out;
}

Outcome criterion_1(const std::vector<CaseAFixture>& fx) {
  double worst = 0;
  for (const auto& f : fx)
    for (std::size_t n = 0; n <= kDegreeA; ++n)
      for (std::size_t m = 0; m <= kDegreeA; ++m) {
        const CX v = sigma_hat_pair(f.sys[n], f.sys[m], f.full);
        worst = std::max(worst, dist(v, CX(n == m ? 1 : 0)));
      }
  return {worst <= 1e-9, "max |sigma_hat(p_n,p_m) - delta| = " + sci(worst) + " (tol 1e-9)"};
}

Outcome criterion_2(const std::vector<CaseAFixture>& fx) {
  constexpr std::size_t k_max = 20;
  std::size_t passed = 0;
  double worst_shift = 0;
  double worst_ratio = 1;
  std::size_t first_bad_k = k_max + 1;
  std::string failing;
  bool identity = true;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const auto r = check_axioms_case_A(fx[i].full, k_max);
    worst_shift = std::max(worst_shift, r.shift_residual);
    identity = identity && r.identity_ok;
    for (const auto& c : r.nondegeneracy) {
      worst_ratio = std::min(worst_ratio, c.measure);
      if (!c.ok) first_bad_k = std::min(first_bad_k, c.order);
    }
    if (r.passed())
      ++passed;
    else
      failing += (failing.empty() ? "" : ",") + std::to_string(i) + "(N=" + std::to_string(fx[i].N) + ")";
  }
  // Corrupted copies: broken shift symmetry and a perturbed identity block.
  bool corrupted_rejected = true;
  for (const auto& f : fx) {
    const auto shifted = f.full.with_entry(0, f.N, f.full.entry(0, f.N) + CX(X("0.1")));
    const auto ident = f.full.with_entry(0, 0, CX(X(1) + X("1e-30")));
    corrupted_rejected = corrupted_rejected && !check_axioms_case_A(shifted, 4).shift_ok;
    corrupted_rejected = corrupted_rejected && !check_axioms_case_A(ident, 4).identity_ok;
  }
  std::string detail = std::to_string(passed) + "/" + std::to_string(fx.size()) +
                       " tables pass; shift residual " + sci(worst_shift) + ", identity " +
                       (identity ? "exact" : "broken") + ", min null-space ratio " + sci(worst_ratio) +
                       " (tol 1e-9)";
  if (!failing.empty()) detail += ", first failing k = " + std::to_string(first_bad_k) + " in tables " + failing;
  detail += corrupted_rejected ? "; corrupted tables rejected" : "; a corrupted table was accepted";
  return {passed == fx.size() && corrupted_rejected, detail};
}

Outcome criterion_3(const std::vector<CaseAFixture>& fx) {
  double worst_moment = 0;
  double min_eig = 1e300;
  bool consistent = true;
  for (const auto& f : fx) {
    const auto W = build_density(f.density);
    for (std::size_t k = 0; k <= f.density.extent(); ++k) {
      try {
        const auto Mk = density_moment(W, k, 1e-10);
        worst_moment = std::max(worst_moment, to_double((Mk - f.density.block(k)).max_abs()));
      } catch (const ConsistencyError&) {
        consistent = false;
      }
    }
    min_eig = std::min(min_eig, min_eigenvalue_on_grid(W, 4096));
  }
  const double floor = 0.49 / to_double(two_pi<X>());
  const bool ok = consistent && worst_moment <= 1e-10 && min_eig >= floor;
  return {ok, "moment mismatch " + sci(worst_moment) + " (tol 1e-10), min eigenvalue " + sci(min_eig) +
                  " (floor " + sci(floor) + ")"};
}

Outcome criterion_4(const std::vector<CaseAFixture>& fx) {
  double worst = 0;
  for (const auto& f : fx) {
    const auto W = build_density(f.density);
    worst = std::max(worst, verify_orthogonality(f.sys, f.density, W, kVerifyDegree).max_residual);
  }
  return {worst <= 1e-8, "max residual " + sci(worst) + " (tol 1e-8) for n,m <= 12"};
}

Outcome criterion_5() {
  double worst_off = 0;
  double min_eta = 1e300;
  for (std::size_t i = 0; i < kCaseBMatrices; ++i) {
    const std::size_t N = 1 + i % 2;
    const std::size_t d = default_table_extent(kVerifyDegree, N);
    const std::size_t degree = table_degree_requirement(d, N);
    const auto J = testing_support::random_monic<X>(N, degree + 1, 2000 + i);
    const auto sys = solve_polynomials(J, Case::B, degree);
    const auto table = build_table_case_B(sys, d);
    const auto r = verify_orthogonality(sys, table, build_density(table), kVerifyDegree);
    worst_off = std::max(worst_off, r.max_offdiagonal_residual);
    for (const auto& e : r.eta) min_eta = std::min(min_eta, std::abs(e));
  }
  const std::size_t d = default_table_extent(kVerifyDegree, 1);
  const auto sys = solve_polynomials(free_jacobi<X>(), Case::B, table_degree_requirement(d, 1));
  const auto table = build_table_case_B(sys, d);
  const auto r = verify_orthogonality(sys, table, build_density(table), kVerifyDegree);
  double free_eta = 0;
  for (const auto& e : r.eta) free_eta = std::max(free_eta, std::abs(e - 1.0));
  const bool ok = worst_off <= 1e-8 && min_eta > 1e-6 && free_eta <= 1e-9 && r.max_offdiagonal_residual <= 1e-8;
  return {ok, "off-diagonal residual " + sci(worst_off) + " (tol 1e-8), min |eta| " + sci(min_eta) +
                  " (> 1e-6), free Jacobi max |eta - 1| " + sci(free_eta) + " (tol 1e-9)"};
}

Outcome criterion_6() {
  double worst = 0;
  for (const CX c : {cx(0), cx(0.5), cx(0.3, 0.4), cx(-1, 2)}) {
    const RankOneModel<X> m(c);
    const auto sys = solve_polynomials(rank_one_jacobi<X>(c), Case::A, 30);
    for (std::size_t n = 0; n <= 30; ++n) {
      const CX oracle = kappa(Polynomial<X>::monomial(n), sys)[0];
      worst = std::max(worst, dist(moment_s(m, n), oracle) / std::max(1.0, to_double(magnitude(oracle))));
    }
  }
  return {worst <= 1e-10, "max relative error " + sci(worst) + " (tol 1e-10) for n <= 30"};
}

Outcome criterion_7() {
  const RankOneModel<X> m(cx(0.3, 0.4));
  const auto r = contour_orthogonality(m, X(3), 10, 8192, true);
  const bool ok = r.max_residual <= 1e-7 && r.node_doubling_change <= 1e-12;
  return {ok, "R0 " + sci(to_double(m.R0())) + ", max residual " + sci(r.max_residual) + " (tol 1e-7), doubling change " +
                  sci(r.node_doubling_change) + " (tol 1e-12)"};
}

Outcome criterion_8() {
  const RankOneModel<X> m(cx(0.3, 0.4));
  double worst = 0;
  for (const CX z : {cx(3), cx(0, 4), cx(5, 5), cx(-2.5)})
    for (std::size_t n = 1; n <= 12; ++n) worst = std::max(worst, dist(phi_series(m, n, z), phi_hypergeometric(m, n, z)));
  const RankOneModel<X> free(cx(0));
  const CX z = cx(10);
  const CX y = CX(1) / (z * z);
  const CX catalan = (CX(1) - sqrt(CX(1) - y * X(4))) / (y * X(2));
  const double gf = dist(phi_series(free, 1, z), catalan);
  return {worst <= 1e-12 && gf <= 1e-12,
          "series vs hypergeometric " + sci(worst) + ", Catalan closed form " + sci(gf) + " (tol 1e-12)"};
}

Outcome criterion_9() {
  double worst_neg = 0;
  double worst_pos = 0;
  for (const CX c : {cx(0), cx(0.5), cx(0.3, 0.4), cx(-1, 2)}) {
    const RankOneModel<X> m(c);
    const X R = X(1.5) * m.R0();
    // Coefficients decay like (2/3)^k, so 512 nodes alias far below 1e-10.
    const auto samples = sample_on_circle<X>([&](const CX& z) { return weight_w(m, z, X("1e-24")); }, R, 512);
    for (long k = 0; k <= 10; ++k)
      worst_neg = std::max(worst_neg, dist(laurent_coefficient(samples, -k - 1), moment_s(m, static_cast<std::size_t>(k))));
    for (long j = 0; j <= 10; ++j)
      worst_pos = std::max(worst_pos, to_double(magnitude(laurent_coefficient(samples, j))));
  }
  return {worst_neg <= 1e-8 && worst_pos <= 1e-10, "index -k-1 vs s_k " + sci(worst_neg) +
                                                       " (tol 1e-8), nonnegative indices " + sci(worst_pos) +
                                                       " (tol 1e-10)"};
}

Outcome criterion_10() {
  std::string detail;
  bool all = true;
  for (const CX c : {cx(0), cx(0.5), cx(0.3, 0.4)}) {
    const RankOneModel<X> m(c);
    const auto scan = alpha_scan(m, default_alphas(m), 2048, 8);
    std::string good;
    for (const auto& e : scan.entries) {
      const bool ok = e.max_imag <= 1e-9 && e.min_real >= -1e-8 && e.orthogonality_residual <= 1e-6 &&
                      e.negative_moment_residual <= 1e-8;
      if (ok) good += (good.empty() ? "" : ",") + fixed(e.alpha / to_double(m.R0()));
    }
    all = all && !good.empty();
    const auto cd = to_double(c);
    detail += (detail.empty() ? "" : "; ") + std::string("c=") + fixed(cd.real()) + "+" + fixed(cd.imag()) + "i: alpha/R0 in {" + (good.empty() ? "none" : good) + "}";
  }
  return {all, detail};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto fx = case_a_fixtures();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"case A consistency", [&] { return criterion_1(fx); }},
      {"axiom checkers", [&] { return criterion_2(fx); }},
      {"density construction", [&] { return criterion_3(fx); }},
      {"integral orthogonality, case A", [&] { return criterion_4(fx); }},
      {"integral orthogonality, case B", criterion_5},
      {"rank-one moments", criterion_6},
      {"contour orthogonality", criterion_7},
      {"phi cross-validation", criterion_8},
      {"Laurent/moment duality", criterion_9},
      {"weight scan", criterion_10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = clock::now();
    const auto r = criteria[i].second();
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("[%s] %2zu %s: %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%d of %zu criteria failed, total %.1fs\n", failures, criteria.size(),
              std::chrono::duration<double>(clock::now() - start).count());
  return failures == 0 ? 0 : 1;
}

// Free Jacobi matrix: polynomial solutions, moment table, circle density and
// the integral orthogonality check, then one rank-one perturbation.
#include <cstdio>

#include "bandspec/banded.hpp"
#include "bandspec/circle_measure.hpp"
#include "bandspec/precision.hpp"
#include "bandspec/rank_one.hpp"
#include "bandspec/spectral.hpp"

int main() {
  using namespace bandspec;
  using Real = Extended;

  const auto J = free_jacobi<Real>();
  const std::size_t n_max = 8;
  const std::size_t d = default_table_extent(n_max, J.half_width());
  const auto sys = solve_polynomials(J, Case::A, table_degree_requirement(d, J.half_width()));
  std::printf("p_3 coefficients:");
  for (const auto& c : sys[3].coeffs()) std::printf(" %g", to_double(c).real());
  std::printf("\n");

  const auto table = build_table_case_A(sys, d);
  const auto W = build_density(table);
  const auto report = verify_orthogonality(sys, table, W, n_max);
  std::printf("density radius %g, %zu nodes, max orthonormality residual %.3g\n", to_double(W.radius()),
              report.nodes, report.max_residual);

  const RankOneModel<Real> model(Complex<Real>(Real("0.3"), Real("0.4")));
  const auto contour = contour_orthogonality(model, Real(3), n_max, 4096);
  std::printf("rank-one c=0.3+0.4i: R0 %g, contour residual on |z|=3 %.3g\n", to_double(model.R0()),
              contour.max_residual);
  return 0;
}

#ifndef BANDSPEC_CIRCLE_MEASURE_HPP
#define BANDSPEC_CIRCLE_MEASURE_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include "bandspec/banded.hpp"
#include "bandspec/dense.hpp"
#include "bandspec/errors.hpp"
#include "bandspec/parallel.hpp"
#include "bandspec/polynomial.hpp"
#include "bandspec/spectral.hpp"

namespace bandspec {

/// exp(2 pi i j / M) for j < M; M must be a power of two >= 8. Only one octant
/// is evaluated, the rest follows by exact reflections and quarter turns.
template <class Real>
std::vector<Complex<Real>> roots_of_unity(std::size_t M) {
  using std::cos;
  using std::sin;
  if (M < 8 || !std::has_single_bit(M)) throw ArgumentError("roots_of_unity: M must be a power of two >= 8");
  std::vector<Complex<Real>> w(M);
  const std::size_t q = M / 4;
  const std::size_t o = M / 8;
  const Real step = two_pi<Real>() / Real(M);
  for (std::size_t j = 0; j <= o; ++j) {
    const Real t = step * Real(j);
    w[j] = Complex<Real>(cos(t), sin(t));
  }
  for (std::size_t j = o + 1; j <= q; ++j) w[j] = Complex<Real>(w[q - j].imag(), w[q - j].real());
  w[0] = Complex<Real>(1);
  w[q] = Complex<Real>(0, 1);
  for (std::size_t j = q + 1; j < M; ++j) w[j] = w[j - q] * Complex<Real>(0, 1);
  return w;
}

/// 4 * degree + 1 rounded up to a power of two, at least 512.
inline std::size_t quadrature_nodes(std::size_t degree) {
  return std::max<std::size_t>(512, std::bit_ceil(4 * degree + 1));
}

/// W(theta) = sum_{|k| <= d} C_k e^{ik theta} on the circle |z| = r, stored through
/// C_{-k} (k = 0..d); C_k is the adjoint of C_{-k}.
template <class Real>
class CircleDensity {
 public:
  CircleDensity(std::size_t N, Real radius, std::vector<CMatrix<Real>> negative_coeffs)
      : n_(N), radius_(std::move(radius)), neg_(std::move(negative_coeffs)) {
    if (neg_.empty()) throw ArgumentError("CircleDensity: C_0 is required");
    for (const auto& c : neg_) pos_.push_back(c.adjoint());
  }

  std::size_t N() const { return n_; }
  const Real& radius() const { return radius_; }
  std::size_t extent() const { return neg_.size() - 1; }
  std::size_t node_hint() const { return quadrature_nodes(2 * extent()); }

  /// C_k for -d <= k <= d, zero outside.
  CMatrix<Real> coefficient(long k) const {
    const std::size_t a = static_cast<std::size_t>(k < 0 ? -k : k);
    if (a > extent()) return CMatrix<Real>(n_, n_);
    return k <= 0 ? neg_[a] : pos_[a];
  }

  /// W at theta = 2 pi j / M, with `roots` from roots_of_unity(M).
  CMatrix<Real> at_node(std::size_t j, const std::vector<Complex<Real>>& roots) const {
    const std::size_t M = roots.size();
    CMatrix<Real> w = neg_[0];
    for (std::size_t k = 1; k <= extent(); ++k) {
      const std::size_t idx = (k * j) % M;
      const Complex<Real> e = roots[idx];
      const Complex<Real> einv = roots[(M - idx) % M];
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) w(a, b) += neg_[k](a, b) * einv + pos_[k](a, b) * e;
    }
    return w;
  }

  CMatrix<Real> at(const Real& theta) const {
    using std::cos;
    using std::sin;
    CMatrix<Real> w = neg_[0];
    for (std::size_t k = 1; k <= extent(); ++k) {
      const Real t = Real(k) * theta;
      const Complex<Real> e(cos(t), sin(t));
      w += neg_[k] * std::conj(e) + pos_[k] * e;
    }
    return w;
  }

 private:
  std::size_t n_;
  Real radius_;
  std::vector<CMatrix<Real>> neg_;
  std::vector<CMatrix<Real>> pos_;
};

/// Positive density with prescribed power moments S_0 = I, S_1, ..., S_d on the
/// circle of radius r, r the smallest power of two >= 2 with
/// 2 sum_k r^{-k} ||S_k||_2 <= 1/2.
template <class Real>
CircleDensity<Real> build_density(const std::vector<CMatrix<Real>>& S) {
  if (S.empty()) throw ArgumentError("build_density: S_0 is required");
  const std::size_t N = S[0].rows();
  for (const auto& s : S)
    if (s.rows() != N || s.cols() != N) throw ArgumentError("build_density: moments must be N x N");
  if (to_double((S[0] - CMatrix<Real>::identity(N)).max_abs()) > 1e-12)
    throw ArgumentError("build_density: S_0 is not the identity");

  std::vector<Real> norms;
  for (std::size_t k = 1; k < S.size(); ++k) norms.push_back(spectral_norm(S[k]));
  Real r = 2;
  for (;;) {
    Real total = 0;
    Real rk = 1;
    for (const auto& nk : norms) {
      rk *= r;
      total += nk / rk;
    }
    if (2 * total <= Real(0.5)) break;
    r *= 2;
    if (!is_finite(r)) throw RangeError("build_density: no finite radius satisfies the positivity margin");
  }

  const Real inv2pi = Real(1) / two_pi<Real>();
  std::vector<CMatrix<Real>> neg;
  neg.push_back(CMatrix<Real>::identity(N) * Complex<Real>(inv2pi));
  Real rk = 1;
  for (std::size_t k = 1; k < S.size(); ++k) {
    rk *= r;
    neg.push_back(S[k] * Complex<Real>(inv2pi / rk));
  }
  return CircleDensity<Real>(N, r, std::move(neg));
}

template <class Real>
CircleDensity<Real> build_density(const SpectralTable<Real>& table) {
  return build_density(table.blocks());
}

/// int_0^{2pi} (r e^{i theta})^k W(theta) d theta. Returns the analytic value;
/// a trapezoid evaluation must agree within `tol` or ConsistencyError is thrown.
template <class Real>
CMatrix<Real> density_moment(const CircleDensity<Real>& W, std::size_t k, double tol = 1e-10) {
  using std::pow;
  const std::size_t N = W.N();
  const Real rk = pow(W.radius(), static_cast<int>(k));
  CMatrix<Real> analytic = W.coefficient(-static_cast<long>(k)) * Complex<Real>(two_pi<Real>() * rk);

  const std::size_t M = quadrature_nodes(k + W.extent());
  const auto roots = roots_of_unity<Real>(M);
  const auto terms = parallel_map<CMatrix<Real>>(M, [&](std::size_t j) {
    return W.at_node(j, roots) * Complex<Real>(rk * roots[(k * j) % M]);
  });
  CMatrix<Real> quad(N, N);
  std::vector<Complex<Real>> column(M);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t j = 0; j < M; ++j) column[j] = terms[j](a, b);
      quad(a, b) = pairwise_sum(column) * (two_pi<Real>() / Real(M));
    }
  const double gap = to_double((quad - analytic).max_abs());
  if (!(gap <= tol))
    throw ConsistencyError("density_moment: quadrature and analytic moment " + std::to_string(k) + " differ by " +
                           std::to_string(gap));
  return analytic;
}

/// Smallest eigenvalue of W(theta) over a uniform grid of `grid` points.
template <class Real>
double min_eigenvalue_on_grid(const CircleDensity<Real>& W, std::size_t grid) {
  const auto roots = roots_of_unity<Real>(grid);
  const auto mins =
      parallel_map<double>(grid, [&](std::size_t j) { return hermitian_min_eigenvalue(W.at_node(j, roots)); });
  return *std::min_element(mins.begin(), mins.end());
}

/// Node data for repeated pairings on one trapezoid grid.
template <class Real>
struct PairingGrid {
  std::size_t nodes = 0;
  std::vector<Complex<Real>> z;        ///< r e^{i theta_j}
  std::vector<CMatrix<Real>> density;  ///< W(theta_j)

  PairingGrid(const CircleDensity<Real>& W, std::size_t M) : nodes(M) {
    const auto roots = roots_of_unity<Real>(M);
    z.reserve(M);
    for (const auto& w : roots) z.push_back(w * W.radius());
    density = parallel_map<CMatrix<Real>>(M, [&](std::size_t j) { return W.at_node(j, roots); });
  }
};

namespace detail {

template <class Real>
std::vector<std::vector<Complex<Real>>> vectorize_on_grid(const Polynomial<Real>& p, std::size_t N,
                                                          const PairingGrid<Real>& grid) {
  return parallel_map<std::vector<Complex<Real>>>(grid.nodes,
                                                  [&](std::size_t j) { return vectorize(p, N, grid.z[j]); });
}

template <class Real>
Complex<Real> pair_on_grid(const std::vector<std::vector<Complex<Real>>>& a,
                           const std::vector<std::vector<Complex<Real>>>& b, const PairingGrid<Real>& grid) {
  std::vector<Complex<Real>> terms(grid.nodes);
  for (std::size_t j = 0; j < grid.nodes; ++j) {
    const auto& w = grid.density[j];
    const std::size_t N = w.rows();
    Complex<Real> acc(0);
    for (std::size_t s = 0; s < N; ++s) {
      Complex<Real> col(0);
      for (std::size_t r = 0; r < N; ++r) col += a[j][r] * w(r, s);
      acc += col * b[j][s];
    }
    terms[j] = acc;
  }
  return pairwise_sum(terms) * (two_pi<Real>() / Real(grid.nodes));
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace detail

inline std::size_t pairing_nodes(std::size_t deg_u, std::size_t deg_v, std::size_t d, std::size_t N) {
  return quadrature_nodes(deg_u + deg_v + d * N);
}

/// Trapezoid value of int vec(u)(z) W(theta) vec(v)(z)^T d theta, z = r e^{i theta}.
/// The right factor is not conjugated. `nodes` = 0 selects the default count.
template <class Real>
Complex<Real> pairing(const Polynomial<Real>& u, const Polynomial<Real>& v, const CircleDensity<Real>& W,
                      std::size_t nodes = 0) {
  if (u.is_zero() || v.is_zero()) return Complex<Real>(0);
  const std::size_t N = W.N();
  const std::size_t du = *u.degree();
  const std::size_t dv = *v.degree();
  if (detail::ceil_div(du + dv, N) > W.extent())
    throw ArgumentError("pairing: density extent " + std::to_string(W.extent()) + " is too small for degrees " +
                        std::to_string(du) + " and " + std::to_string(dv));
  const std::size_t M = nodes ? nodes : pairing_nodes(du, dv, W.extent(), N);
  const PairingGrid<Real> grid(W, M);
  return detail::pair_on_grid(detail::vectorize_on_grid(u, N, grid), detail::vectorize_on_grid(v, N, grid), grid);
}

struct OrthogonalityEntry {
  std::size_t n;
  std::size_t m;
  std::complex<double> value;
  std::complex<double> expected;
  std::complex<double> residual;
};

struct OrthogonalityReport {
  Case case_tag = Case::A;
  std::size_t n_max = 0;
  /// Largest n for which every pairing with m <= n uses only moments S_0..S_d.
  std::size_t certified_n_max = 0;
  std::size_t nodes = 0;
  std::vector<OrthogonalityEntry> entries;  ///< 0 <= m <= n <= n_max
  double max_residual = 0;
  double max_offdiagonal_residual = 0;
  /// Case B: eta_n = pairing(p_n, p_n); case A: the diagonal values.
  std::vector<std::complex<double>> eta;
  std::vector<bool> eta_nonzero;
  /// Largest pairing change when the node count is doubled.
  double node_doubling_change = 0;
};

/// Integral orthogonality of p_0..p_{n_max} against the density. Case A expects
/// delta_{n,m}. Case B expects 0 below the diagonal; the diagonal eta_n is
/// compared against sigma_hat_pair on the table and flagged when |eta_n| <= 1e-8.
template <class Real>
OrthogonalityReport verify_orthogonality(const PolynomialSystem<Real>& sys, const SpectralTable<Real>& table,
                                         const CircleDensity<Real>& W, std::size_t n_max, bool check_doubling = false) {
  const std::size_t N = W.N();
  if (n_max > sys.max_degree()) throw ArgumentError("verify_orthogonality: n_max exceeds the polynomial system");
  if (W.extent() < detail::ceil_div(2 * n_max, N))
    throw ArgumentError("verify_orthogonality: density extent " + std::to_string(W.extent()) +
                        " does not cover n_max=" + std::to_string(n_max));
  OrthogonalityReport report;
  report.case_tag = sys.case_tag;
  report.n_max = n_max;
  while (detail::ceil_div(2 * (report.certified_n_max + 1), N) <= W.extent()) ++report.certified_n_max;

  auto run = [&](std::size_t M) {
    const PairingGrid<Real> grid(W, M);
    std::vector<std::vector<std::vector<Complex<Real>>>> rows;
    for (std::size_t n = 0; n <= n_max; ++n) rows.push_back(detail::vectorize_on_grid(sys[n], N, grid));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t n = 0; n <= n_max; ++n)
      for (std::size_t m = 0; m <= n; ++m) pairs.emplace_back(n, m);
    return std::make_pair(pairs, parallel_map<Complex<Real>>(pairs.size(), [&](std::size_t i) {
                            return detail::pair_on_grid(rows[pairs[i].first], rows[pairs[i].second], grid);
                          }));
  };

  const std::size_t M = pairing_nodes(n_max, n_max, W.extent(), N);
  report.nodes = M;
  const auto [pairs, values] = run(M);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [n, m] = pairs[i];
    Complex<Real> expected(0);
    if (n == m) expected = sys.case_tag == Case::A ? Complex<Real>(1) : sigma_hat_pair(sys[n], sys[n], table);
    const Complex<Real> res = values[i] - expected;
    const double mag = to_double(magnitude(res));
    report.entries.push_back({n, m, to_double(values[i]), to_double(expected), to_double(res)});
    report.max_residual = std::max(report.max_residual, mag);
    if (n != m) report.max_offdiagonal_residual = std::max(report.max_offdiagonal_residual, mag);
    if (n == m) {
      report.eta.push_back(to_double(values[i]));
      report.eta_nonzero.push_back(std::abs(report.eta.back()) > 1e-8);
    }
  }
  if (check_doubling) {
    const auto doubled = run(2 * M).second;
    for (std::size_t i = 0; i < values.size(); ++i)
      report.node_doubling_change =
          std::max(report.node_doubling_change, to_double(magnitude(Complex<Real>(doubled[i] - values[i]))));
  }
  return report;
}

}  // namespace bandspec

#endif  // BANDSPEC_CIRCLE_MEASURE_HPP

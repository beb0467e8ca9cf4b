#ifndef BANDSPEC_SPECTRAL_HPP
#define BANDSPEC_SPECTRAL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandspec/banded.hpp"
#include "bandspec/dense.hpp"
#include "bandspec/errors.hpp"
#include "bandspec/polynomial.hpp"

namespace bandspec {

/// Coefficients c_r with u = sum_r c_r p_r.
template <class Real>
struct KappaExpansion {
  std::vector<Complex<Real>> coeffs;

  Complex<Real> operator[](std::size_t r) const { return r < coeffs.size() ? coeffs[r] : Complex<Real>(0); }
};

/// Expansion of u in the basis {p_n} by back-substitution against the
/// triangular coefficient matrix of the system.
template <class Real>
KappaExpansion<Real> kappa(const Polynomial<Real>& u, const PolynomialSystem<Real>& sys) {
  KappaExpansion<Real> out;
  if (u.is_zero()) return out;
  const std::size_t deg = *u.degree();
  if (deg > sys.max_degree())
    throw ArgumentError("kappa: degree " + std::to_string(deg) + " exceeds the polynomial system (K=" +
                        std::to_string(sys.max_degree()) + ")");
  std::vector<Complex<Real>> residual = u.coeffs();
  out.coeffs.assign(deg + 1, Complex<Real>(0));
  for (std::size_t r = deg + 1; r-- > 0;) {
    const Complex<Real> c = residual[r] / sys.leading[r];
    out.coeffs[r] = c;
    if (c == Complex<Real>(0)) continue;
    const auto& p = sys.polys[r].coeffs();
    for (std::size_t i = 0; i < r; ++i) residual[i] -= c * p[i];
    residual[r] = Complex<Real>(0);
  }
  return out;
}

template <class Real>
Complex<Real> kappa_dot(const KappaExpansion<Real>& a, const KappaExpansion<Real>& b) {
  Complex<Real> s(0);
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (std::size_t r = 0; r < n; ++r) s += a.coeffs[r] * b.coeffs[r];
  return s;
}

/// Bilinear spectral function of a complex symmetric matrix: (kappa v)^T (kappa u).
template <class Real>
Complex<Real> sigma_case_A(const Polynomial<Real>& u, const Polynomial<Real>& v, const PolynomialSystem<Real>& sys) {
  if (sys.case_tag != Case::A) throw ArgumentError("sigma_case_A: polynomial system is not tagged case A");
  return kappa_dot(kappa(u, sys), kappa(v, sys));
}

/// Moment data gamma_{i,j} = sigma(lambda^i, lambda^j) stored as the first block
/// column S_0..S_d of the N x N block Hankel matrix Gamma.
///
/// gamma(i, j) always reads through the block shift. A table may also carry
/// independently evaluated entries ("direct" entries) for a leading square
/// section; the axiom checkers read those where present, so the shift property
/// is tested on data that was not produced by the shift.
template <class Real>
class SpectralTable {
 public:
  using Block = CMatrix<Real>;

  SpectralTable(std::size_t N, Case case_tag, std::vector<Block> blocks)
      : n_(N), case_tag_(case_tag), blocks_(std::move(blocks)) {
    if (n_ == 0) throw ArgumentError("SpectralTable: N must be positive");
    if (blocks_.empty()) throw ArgumentError("SpectralTable: at least S_0 is required");
    for (const auto& b : blocks_)
      if (b.rows() != n_ || b.cols() != n_) throw ArgumentError("SpectralTable: blocks must be N x N");
  }

  std::size_t N() const { return n_; }
  Case case_tag() const { return case_tag_; }
  /// Index of the last stored block.
  std::size_t extent() const { return blocks_.size() - 1; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t k) const { return blocks_.at(k); }

  bool covers(std::size_t i, std::size_t j) const { return i / n_ + j / n_ <= extent(); }

  /// Largest n such that every gamma(i, j) with i, j < n is covered.
  std::size_t covered_square() const { return (extent() / 2 + 1) * n_; }

  Complex<Real> gamma(std::size_t i, std::size_t j) const {
    if (!covers(i, j))
      throw ArgumentError("SpectralTable: gamma(" + std::to_string(i) + "," + std::to_string(j) +
                          ") lies beyond the stored blocks");
    return blocks_[i / n_ + j / n_](i % n_, j % n_);
  }

  bool has_direct() const { return direct_.has_value(); }
  const std::optional<Block>& direct() const { return direct_; }

  /// Direct entry where available, otherwise the block-shift read.
  Complex<Real> entry(std::size_t i, std::size_t j) const {
    if (direct_ && i < direct_->rows() && j < direct_->cols()) return (*direct_)(i, j);
    return gamma(i, j);
  }

  bool entry_available(std::size_t i, std::size_t j) const {
    return (direct_ && i < direct_->rows() && j < direct_->cols()) || covers(i, j);
  }

  void set_direct(Block direct) { direct_ = std::move(direct); }

  /// Copy with one direct entry overwritten (used to exercise the checkers).
  SpectralTable with_entry(std::size_t i, std::size_t j, Complex<Real> value) const {
    SpectralTable out = *this;
    if (!out.direct_) {
      const std::size_t n = covered_square();
      Block d(n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d(a, b) = gamma(a, b);
      out.direct_ = std::move(d);
    }
    if (i >= out.direct_->rows() || j >= out.direct_->cols())
      throw ArgumentError("SpectralTable::with_entry: index outside the direct section");
    (*out.direct_)(i, j) = value;
    return out;
  }

  std::vector<std::string> warnings;

 private:
  std::size_t n_;
  Case case_tag_;
  std::vector<Block> blocks_;
  std::optional<Block> direct_;
};

/// Table extent covering every pairing of polynomials up to degree K.
inline std::size_t default_table_extent(std::size_t K, std::size_t N) { return (2 * K + N - 1) / N + 1; }

/// Highest polynomial degree a system needs to build a table with blocks S_0..S_d.
inline std::size_t table_degree_requirement(std::size_t d, std::size_t N) { return (d + 1) * N - 1; }

/// Case A: s_{k;l,j} = sigma(lambda^{kN+l}, lambda^j) through the kappa transform.
template <class Real>
SpectralTable<Real> build_table_case_A(const PolynomialSystem<Real>& sys, std::size_t d) {
  const std::size_t N = sys.N;
  const std::size_t need = table_degree_requirement(d, N);
  if (sys.max_degree() < need)
    throw ArgumentError("build_table_case_A: system covers degree " + std::to_string(sys.max_degree()) +
                        " but the table needs degree " + std::to_string(need));
  if (sys.case_tag != Case::A) throw ArgumentError("build_table_case_A: polynomial system is not tagged case A");

  std::vector<KappaExpansion<Real>> monomial_kappa;
  monomial_kappa.reserve(need + 1);
  for (std::size_t i = 0; i <= need; ++i) monomial_kappa.push_back(kappa(Polynomial<Real>::monomial(i), sys));

  std::vector<CMatrix<Real>> blocks;
  for (std::size_t k = 0; k <= d; ++k) {
    CMatrix<Real> S(N, N);
    for (std::size_t l = 0; l < N; ++l)
      for (std::size_t j = 0; j < N; ++j) S(l, j) = kappa_dot(monomial_kappa[k * N + l], monomial_kappa[j]);
    blocks.push_back(std::move(S));
  }
  SpectralTable<Real> table(N, Case::A, std::move(blocks));

  const std::size_t n = need + 1;
  CMatrix<Real> direct(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) direct(i, j) = kappa_dot(monomial_kappa[i], monomial_kappa[j]);
  table.set_direct(std::move(direct));
  table.warnings = conditioning_warnings(sys);
  return table;
}

/// Case B: first block column from the left-orthogonality recursion
/// gamma_{n,j} = -sum_{r<n} alpha_{n,r} gamma_{r,j} (n >= N > j), then the block shift.
template <class Real>
SpectralTable<Real> build_table_case_B(const PolynomialSystem<Real>& sys, std::size_t d) {
  const std::size_t N = sys.N;
  if (sys.case_tag != Case::B) throw ArgumentError("build_table_case_B: polynomial system is not tagged case B");
  for (std::size_t n = 0; n < sys.leading.size(); ++n)
    if (sys.leading[n] != Complex<Real>(1))
      throw ArgumentError("build_table_case_B: p_" + std::to_string(n) + " is not monic");
  const std::size_t need = table_degree_requirement(d, N);
  if (sys.max_degree() < need)
    throw ArgumentError("build_table_case_B: system covers degree " + std::to_string(sys.max_degree()) +
                        " but the table needs degree " + std::to_string(need));

  // column[m][s] = gamma_{m,s}, s < N
  std::vector<std::vector<Complex<Real>>> column(need + 1, std::vector<Complex<Real>>(N));
  for (std::size_t m = 0; m <= need; ++m) {
    if (m < N) {
      column[m][m] = Complex<Real>(1);
      continue;
    }
    const auto& alpha = sys.polys[m].coeffs();
    for (std::size_t s = 0; s < N; ++s) {
      Complex<Real> acc(0);
      for (std::size_t r = 0; r < m; ++r) acc += alpha[r] * column[r][s];
      column[m][s] = -acc;
    }
  }
  std::vector<CMatrix<Real>> blocks;
  for (std::size_t k = 0; k <= d; ++k) {
    CMatrix<Real> S(N, N);
    for (std::size_t l = 0; l < N; ++l)
      for (std::size_t s = 0; s < N; ++s) S(l, s) = column[k * N + l][s];
    blocks.push_back(std::move(S));
  }
  SpectralTable<Real> table(N, Case::B, std::move(blocks));
  table.warnings = conditioning_warnings(sys);
  return table;
}

/// sum_{i,j} a_i b_j gamma_{i,j}: equals sigma in case A and the additional
/// (bilinear) spectral function in case B.
template <class Real>
Complex<Real> sigma_hat_pair(const Polynomial<Real>& u, const Polynomial<Real>& v, const SpectralTable<Real>& table) {
  if (u.is_zero() || v.is_zero()) return Complex<Real>(0);
  const std::size_t du = *u.degree();
  const std::size_t dv = *v.degree();
  if (!table.covers(du, dv))
    throw ArgumentError("sigma_hat_pair: table extent too small for degrees " + std::to_string(du) + " and " +
                        std::to_string(dv));
  Complex<Real> total(0);
  for (std::size_t i = 0; i <= du; ++i) {
    const Complex<Real> a = u.coeffs()[i];
    if (a == Complex<Real>(0)) continue;
    Complex<Real> row(0);
    for (std::size_t j = 0; j <= dv; ++j) row += table.gamma(i, j) * v.coeffs()[j];
    total += a * row;
  }
  return total;
}

struct NondegeneracyCheck {
  std::size_t order;  ///< k (case A) or M (case B)
  double measure;     ///< distance / ||Gamma_k|| (case A) or |det Gamma_M| (case B)
  double threshold;
  bool ok;
};

struct AxiomReport {
  Case case_tag = Case::A;
  double shift_residual = 0;  ///< max |gamma_{i+N,j} - gamma_{i,j+N}| / max |gamma|
  std::size_t shift_pairs = 0;
  bool shift_ok = true;
  bool identity_ok = true;
  std::vector<NondegeneracyCheck> nondegeneracy;
  bool nondegenerate_ok = true;

  bool passed() const { return shift_ok && identity_ok && nondegenerate_ok; }
};

struct AxiomTolerances {
  double shift = 1e-10;
  double rank = 1e-9;          ///< case A null-space test, relative to ||Gamma_k||_F
  double determinant = 1e-10;  ///< case B, relative to ||Gamma_M||_F^{M+1}
};

namespace detail {

template <class Real>
void check_shift_and_identity(const SpectralTable<Real>& table, std::size_t index_sum_limit, double tol,
                              AxiomReport& report) {
  const std::size_t N = table.N();
  Real worst = 0;
  Real scale = 0;
  for (std::size_t s = 0; s <= index_sum_limit; ++s)
    for (std::size_t i = 0; i <= s; ++i) {
      const std::size_t j = s - i;
      if (!table.entry_available(i + N, j) || !table.entry_available(i, j + N)) continue;
      const auto a = table.entry(i + N, j);
      const auto b = table.entry(i, j + N);
      worst = std::max(worst, magnitude(Complex<Real>(a - b)));
      scale = std::max({scale, magnitude(a), magnitude(b)});
      ++report.shift_pairs;
    }
  report.shift_residual = scale > 0 ? to_double(Real(worst / scale)) : 0.0;
  report.shift_ok = report.shift_residual <= tol;

  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (table.entry(i, j) != Complex<Real>(i == j ? 1 : 0) || table.gamma(i, j) != Complex<Real>(i == j ? 1 : 0))
        report.identity_ok = false;
}

template <class Real>
CMatrix<Real> leading_section(const SpectralTable<Real>& table, std::size_t k) {
  CMatrix<Real> g(k + 1, k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j) g(i, j) = table.entry(i, j);
  return g;
}

}  // namespace detail

/// Axioms of a case A spectral function: shift symmetry, identity block, and
/// nondegeneracy (no kernel vector of Gamma_k^T with nonzero last coordinate).
template <class Real>
AxiomReport check_axioms_case_A(const SpectralTable<Real>& table, std::size_t k_max, AxiomTolerances tol = {}) {
  AxiomReport report;
  report.case_tag = Case::A;
  const std::size_t N = table.N();
  if (!table.entry_available(k_max, k_max))
    throw ArgumentError("check_axioms_case_A: table does not cover Gamma_" + std::to_string(k_max));
  const std::size_t limit = 2 * k_max >= N ? 2 * k_max - N : 0;
  detail::check_shift_and_identity(table, limit, tol.shift, report);

  for (std::size_t k = 0; k <= k_max; ++k) {
    const auto g = detail::leading_section(table, k);
    const Real norm = g.frobenius_norm();
    const Real threshold = Real(tol.rank) * norm;
    const Real dist = last_row_distance(g, threshold);
    const double ratio = norm > 0 ? to_double(Real(dist / norm)) : 0.0;
    const bool ok = dist > threshold;
    report.nondegeneracy.push_back({k, ratio, tol.rank, ok});
    report.nondegenerate_ok = report.nondegenerate_ok && ok;
  }
  return report;
}

/// Axioms of a case B spectral function; condition 3 is det Gamma_M != 0 for M <= m_max.
template <class Real>
AxiomReport check_axioms_case_B(const SpectralTable<Real>& table, std::size_t m_max, AxiomTolerances tol = {}) {
  using std::pow;
  AxiomReport report;
  report.case_tag = Case::B;
  const std::size_t N = table.N();
  if (!table.entry_available(m_max, m_max))
    throw ArgumentError("check_axioms_case_B: table does not cover Gamma_" + std::to_string(m_max));
  const std::size_t limit = 2 * m_max >= N ? 2 * m_max - N : 0;
  detail::check_shift_and_identity(table, limit, tol.shift, report);

  for (std::size_t M = 0; M <= m_max; ++M) {
    const auto g = detail::leading_section(table, M);
    const Real det = magnitude(determinant(g));
    const Real threshold = Real(tol.determinant) * pow(g.frobenius_norm(), static_cast<int>(M + 1));
    const bool ok = det > threshold;
    report.nondegeneracy.push_back({M, to_double(det), to_double(threshold), ok});
    report.nondegenerate_ok = report.nondegenerate_ok && ok;
  }
  return report;
}

}  // namespace bandspec

#endif  // BANDSPEC_SPECTRAL_HPP

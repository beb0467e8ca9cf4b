#ifndef BANDSPEC_BANDED_HPP
#define BANDSPEC_BANDED_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandspec/errors.hpp"
#include "bandspec/polynomial.hpp"
#include "bandspec/precision.hpp"

namespace bandspec {

/// A: complex symmetric. B: unit N-th superdiagonal (monic solutions).
enum class Case { A, B };

inline const char* to_string(Case c) { return c == Case::A ? "A" : "B"; }

inline Case parse_case(const std::string& s) {
  if (s == "A" || s == "a") return Case::A;
  if (s == "B" || s == "b") return Case::B;
  throw ArgumentError("case must be A or B, got '" + s + "'");
}

/// Threshold below which an extreme-diagonal entry counts as vanishing.
inline constexpr double kDegeneracyThreshold = 1e-12;

template <class Real>
struct OffBandEntry {
  std::size_t row;
  std::size_t col;
  Complex<Real> value;
};

/// Semi-infinite complex (2N+1)-diagonal matrix J = (g_{m,n}).
///
/// Entries are produced on demand by a generator `(row, offset) -> g_{row,row+offset}`
/// with offset in [-N, N]; entries outside the band are zero by representation.
/// A finite `row_extent` marks matrices defined by explicit data: rows at or
/// beyond it are not available.
template <class Real>
class BandedMatrix {
 public:
  using Scalar = Complex<Real>;
  using Generator = std::function<Scalar(std::size_t row, int offset)>;

  BandedMatrix(std::size_t half_width, Generator generator, double bound,
               std::optional<std::size_t> row_extent = std::nullopt,
               std::vector<OffBandEntry<Real>> off_band = {})
      : n_(half_width),
        generator_(std::move(generator)),
        bound_(bound),
        row_extent_(row_extent),
        off_band_(std::move(off_band)) {
    if (n_ == 0) throw ArgumentError("band half-width N must be positive");
    if (!(bound_ > 0)) throw ArgumentError("bound C must be positive");
  }

  std::size_t half_width() const { return n_; }
  double bound() const { return bound_; }
  std::optional<std::size_t> row_extent() const { return row_extent_; }
  const std::vector<OffBandEntry<Real>>& off_band_entries() const { return off_band_; }

  bool has_row(std::size_t row) const { return !row_extent_ || row < *row_extent_; }

  /// g_{row,row+offset}; zero when the column would be negative or |offset| > N.
  Scalar at_offset(std::size_t row, int offset) const {
    if (offset > static_cast<int>(n_) || offset < -static_cast<int>(n_)) return Scalar(0);
    if (offset < 0 && row < static_cast<std::size_t>(-offset)) return Scalar(0);
    if (!has_row(row)) throw ArgumentError("matrix row " + std::to_string(row) + " is not available (insufficient rows)");
    return generator_(row, offset);
  }

  Scalar operator()(std::size_t row, std::size_t col) const {
    const long offset = static_cast<long>(col) - static_cast<long>(row);
    if (offset > static_cast<long>(n_) || -offset > static_cast<long>(n_)) return Scalar(0);
    return at_offset(row, static_cast<int>(offset));
  }

 private:
  std::size_t n_;
  Generator generator_;
  double bound_;
  std::optional<std::size_t> row_extent_;
  std::vector<OffBandEntry<Real>> off_band_;
};

/// N = 1, unit off-diagonals, zero diagonal.
template <class Real>
BandedMatrix<Real> free_jacobi() {
  return BandedMatrix<Real>(
      1, [](std::size_t, int offset) { return offset == 0 ? Complex<Real>(0) : Complex<Real>(1); }, 2.0);
}

/// Free Jacobi matrix with g_{0,0} = c.
template <class Real>
BandedMatrix<Real> rank_one_jacobi(Complex<Real> c) {
  const double bound = std::max(1.0, std::abs(to_double(c))) + 1.0;
  return BandedMatrix<Real>(
      1,
      [c](std::size_t row, int offset) {
        if (offset != 0) return Complex<Real>(1);
        return row == 0 ? c : Complex<Real>(0);
      },
      bound);
}

/// Matrix backed by explicit band rows: rows[n][offset + N] = g_{n,n+offset}.
/// Slots with negative column index are ignored.
template <class Real>
BandedMatrix<Real> from_band_rows(std::size_t N, std::vector<std::vector<Complex<Real>>> rows, double bound) {
  for (const auto& r : rows)
    if (r.size() != 2 * N + 1) throw ArgumentError("band row must hold 2N+1 entries");
  const std::size_t extent = rows.size();
  auto shared = std::make_shared<const std::vector<std::vector<Complex<Real>>>>(std::move(rows));
  return BandedMatrix<Real>(
      N, [shared, N](std::size_t row, int offset) { return (*shared)[row][static_cast<std::size_t>(offset + static_cast<int>(N))]; },
      bound, extent);
}

/// Copy of J with one entry replaced. Entries outside the band are recorded as
/// off-band data (reported by validate) since the band representation cannot hold them.
template <class Real>
BandedMatrix<Real> with_entry(const BandedMatrix<Real>& J, std::size_t row, std::size_t col, Complex<Real> value) {
  const long offset = static_cast<long>(col) - static_cast<long>(row);
  const long N = static_cast<long>(J.half_width());
  auto off_band = J.off_band_entries();
  if (offset > N || -offset > N) {
    off_band.push_back({row, col, value});
    return BandedMatrix<Real>(
        J.half_width(), [J](std::size_t r, int o) { return J.at_offset(r, o); }, J.bound(), J.row_extent(),
        std::move(off_band));
  }
  return BandedMatrix<Real>(
      J.half_width(),
      [J, row, off = static_cast<int>(offset), value](std::size_t r, int o) {
        return (r == row && o == off) ? value : J.at_offset(r, o);
      },
      J.bound(), J.row_extent(), std::move(off_band));
}

enum class ViolationKind { band_structure, bound, vanishing_extreme_diagonal, not_symmetric, superdiagonal_not_unit };

struct Violation {
  ViolationKind kind;
  std::size_t row;
  std::size_t col;
  std::string message;
};

struct ValidationReport {
  Case case_tag = Case::A;
  std::size_t rows_checked = 0;
  std::vector<Violation> violations;
  /// Hypotheses that finite data cannot certify (e.g. the global bound C).
  std::vector<std::string> unchecked_hypotheses;

  bool valid() const { return violations.empty(); }
};

/// Checks rows 0..rows-1 of J against the structural conditions of the given case.
template <class Real>
ValidationReport validate(const BandedMatrix<Real>& J, Case case_tag, std::size_t rows) {
  using std::to_string;
  ValidationReport report;
  report.case_tag = case_tag;
  const std::size_t N = J.half_width();
  if (J.row_extent()) rows = std::min(rows, *J.row_extent());
  report.rows_checked = rows;

  for (const auto& e : J.off_band_entries()) {
    if (e.value != Complex<Real>(0))
      report.violations.push_back({ViolationKind::band_structure, e.row, e.col,
                                   "entry outside the band at (" + to_string(e.row) + "," + to_string(e.col) + ")"});
  }

  for (std::size_t n = 0; n < rows; ++n) {
    const std::size_t lo = n >= N ? n - N : 0;
    for (std::size_t j = lo; j <= n + N; ++j) {
      const auto g = J(n, j);
      if (!(std::abs(to_double(g)) < J.bound()))
        report.violations.push_back({ViolationKind::bound, n, j,
                                     "entry at (" + to_string(n) + "," + to_string(j) + ") violates |g| < C"});
    }
    if (!(std::abs(to_double(J(n, n + N))) > kDegeneracyThreshold))
      report.violations.push_back({ViolationKind::vanishing_extreme_diagonal, n, n + N,
                                   "extreme diagonal vanishes at k=" + to_string(n)});
    if (n >= N && !(std::abs(to_double(J(n, n - N))) > kDegeneracyThreshold))
      report.violations.push_back({ViolationKind::vanishing_extreme_diagonal, n, n - N,
                                   "extreme subdiagonal vanishes at l=" + to_string(n)});
    if (case_tag == Case::A) {
      for (std::size_t j = n + 1; j <= n + N && j < rows; ++j) {
        const Complex<Real> d = J(n, j) - J(j, n);
        if (std::abs(to_double(d)) > kDegeneracyThreshold)
          report.violations.push_back({ViolationKind::not_symmetric, n, j,
                                       "not symmetric at (" + to_string(n) + "," + to_string(j) + ")"});
      }
    } else if (J(n, n + N) != Complex<Real>(1)) {
      report.violations.push_back({ViolationKind::superdiagonal_not_unit, n, n + N,
                                   "superdiagonal-N entry is not 1 at k=" + to_string(n)});
    }
  }
  if (!J.row_extent())
    report.unchecked_hypotheses.push_back("global bound |g| < C checked on rows 0.." + to_string(rows ? rows - 1 : 0) +
                                          " only; generator-defined rows beyond are unverified");
  return report;
}

/// Polynomial solutions p_0..p_K of J y = lambda^N y with p_j = lambda^j for j < N.
template <class Real>
struct PolynomialSystem {
  std::size_t N = 1;
  Case case_tag = Case::A;
  std::vector<Polynomial<Real>> polys;
  std::vector<Complex<Real>> leading;

  std::size_t max_degree() const { return polys.empty() ? 0 : polys.size() - 1; }
  const Polynomial<Real>& operator[](std::size_t n) const { return polys.at(n); }
};

/// Forward recurrence: g_{n,n+N} p_{n+N} = lambda^N p_n - sum_{j<n+N} g_{n,j} p_j for rows n = 0..K-N.
template <class Real>
PolynomialSystem<Real> solve_polynomials(const BandedMatrix<Real>& J, Case case_tag, std::size_t K) {
  using Scalar = Complex<Real>;
  const std::size_t N = J.half_width();
  PolynomialSystem<Real> sys;
  sys.N = N;
  sys.case_tag = case_tag;
  if (K >= N && !J.has_row(K - N))
    throw ArgumentError("solve_polynomials: matrix has insufficient rows for K=" + std::to_string(K));

  for (std::size_t j = 0; j < N && j <= K; ++j) {
    sys.polys.push_back(Polynomial<Real>::monomial(j));
    sys.leading.push_back(Scalar(1));
  }
  for (std::size_t n = 0; n + N <= K; ++n) {
    const Scalar pivot = J(n, n + N);
    if (!(std::abs(to_double(pivot)) > kDegeneracyThreshold))
      throw DegenerateMatrixError("solve_polynomials: |g_{" + std::to_string(n) + "," + std::to_string(n + N) +
                                  "}| is below the degeneracy threshold");
    Polynomial<Real> rhs = sys.polys[n].shifted(N);
    const std::size_t lo = n >= N ? n - N : 0;
    for (std::size_t j = lo; j < n + N; ++j) {
      const Scalar g = J(n, j);
      if (g != Scalar(0)) rhs -= sys.polys[j] * g;
    }
    // The top coefficient of rhs is leading(p_n), so dividing it by the pivot
    // gives leading(p_{n+N}) by the same operation.
    std::vector<Scalar> c = rhs.coeffs();
    if (pivot != Scalar(1))
      for (auto& x : c) x /= pivot;
    const Scalar lead = c.back();
    sys.polys.emplace_back(std::move(c));
    sys.leading.push_back(lead);
  }
  return sys;
}

/// Warnings for leading coefficients whose size makes triangular solves fragile.
template <class Real>
std::vector<std::string> conditioning_warnings(const PolynomialSystem<Real>& sys) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n < sys.leading.size(); ++n) {
    const double a = std::abs(to_double(sys.leading[n]));
    if (a < 1e-8 || a > 1e8)
      out.push_back("leading coefficient of p_" + std::to_string(n) + " has magnitude " + std::to_string(a));
  }
  return out;
}

}  // namespace bandspec

#endif  // BANDSPEC_BANDED_HPP

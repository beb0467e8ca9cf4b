#ifndef BANDSPEC_RANK_ONE_HPP
#define BANDSPEC_RANK_ONE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "bandspec/circle_measure.hpp"
#include "bandspec/errors.hpp"
#include "bandspec/parallel.hpp"
#include "bandspec/polynomial.hpp"
#include "bandspec/precision.hpp"
#include "bandspec/spectral.hpp"

namespace bandspec {

/// Free Jacobi matrix perturbed in the (0,0) entry by c.
template <class Real>
class RankOneModel {
 public:
  explicit RankOneModel(Complex<Real> c, std::optional<Real> alpha = std::nullopt,
                        Real series_tol = PrecisionTraits<Real>::series_tolerance())
      : c_(c), series_tol_(series_tol) {
    const Real two(2);
    r0_ = std::max(two, two * magnitude(c_));
    alpha_ = alpha ? *alpha : Real(3) * r0_ / Real(2);
    if (!(alpha_ > r0_)) throw DomainError("RankOneModel: alpha must exceed R0");
    if (!(series_tol_ > 0)) throw ArgumentError("RankOneModel: series tolerance must be positive");
  }

  const Complex<Real>& c() const { return c_; }
  const Real& R0() const { return r0_; }
  const Real& alpha() const { return alpha_; }
  Real R1() const { return alpha_ * alpha_ / r0_; }
  const Real& series_tol() const { return series_tol_; }

 private:
  Complex<Real> c_;
  Real series_tol_;
  Real r0_;
  Real alpha_;
};

/// u_n(x) = U_n(x/2): u_0 = 1, u_1 = x, u_{n+1} = x u_n - u_{n-1}.
template <class Real>
Polynomial<Real> chebyshev_u(std::size_t n) {
  Polynomial<Real> prev{Complex<Real>(1)};
  if (n == 0) return prev;
  Polynomial<Real> cur = Polynomial<Real>::monomial(1);
  for (std::size_t k = 1; k < n; ++k) {
    Polynomial<Real> next = cur.shifted(1) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// p_n = u_n - c u_{n-1}, u_{-1} = 0.
template <class Real>
Polynomial<Real> p_closed_form(const RankOneModel<Real>& model, std::size_t n) {
  if (n == 0) return Polynomial<Real>{Complex<Real>(1)};
  return chebyshev_u<Real>(n) - chebyshev_u<Real>(n - 1) * model.c();
}

/// u_n = sum_j c^{n-j} p_j.
template <class Real>
KappaExpansion<Real> u_from_p(const RankOneModel<Real>& model, std::size_t n) {
  KappaExpansion<Real> out;
  out.coeffs.assign(n + 1, Complex<Real>(1));
  for (std::size_t j = n; j-- > 0;) out.coeffs[j] = out.coeffs[j + 1] * model.c();
  return out;
}

/// Weights w_j with lambda^n = sum_j w_j u_j. Factorial ratios are built as
/// running products from the top index down.
template <class Real>
std::vector<Real> monomial_in_u(std::size_t n) {
  std::vector<Real> w(n + 1, Real(0));
  if (n % 2 == 0) {
    const std::size_t k = n / 2;
    Real t = Real(1) / Real(2 * k + 1);
    for (std::size_t j = k + 1; j-- > 0;) {
      w[2 * j] = Real(2 * j + 1) * t;
      if (j > 0) t = t * Real(k + j + 1) / Real(k - j + 1);
    }
  } else {
    const std::size_t k = (n + 1) / 2;
    Real t = Real(1) / Real(2 * k);
    for (std::size_t j = k; j >= 1; --j) {
      w[2 * j - 1] = Real(2 * j) * t;
      t = t * Real(k + j) / Real(k - j + 1);
    }
  }
  return w;
}

/// s_n = S(lambda^n); S(u_j) = c^j.
template <class Real>
Complex<Real> moment_s(const RankOneModel<Real>& model, std::size_t n) {
  const auto w = monomial_in_u<Real>(n);
  Complex<Real> s(0);
  Complex<Real> cj(1);
  for (std::size_t j = 0; j <= n; ++j) {
    if (w[j] != 0) s += cj * w[j];
    cj *= model.c();
  }
  if (!is_finite(s)) throw RangeError("moment_s: s_" + std::to_string(n) + " is not representable");
  return s;
}

template <class Real>
std::vector<Complex<Real>> moments_s(const RankOneModel<Real>& model, std::size_t n_max) {
  std::vector<Complex<Real>> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(moment_s(model, n));
  return out;
}

namespace detail {

template <class Real>
void require_outside(const RankOneModel<Real>& model, const Complex<Real>& z, const char* who) {
  if (!(magnitude(z) >= model.R0() * (Real(1) + Real(1e-9))))
    throw DomainError(std::string(who) + ": |z| must exceed R0");
}

}  // namespace detail

/// phi_n(z) = sum_m (2m+n-1)! / (m! (m+n)!) z^{-2m}. Summation stops once the
/// geometric tail of the term bound 2^n 4^m / (n |z|^{2m}) is below tol.
template <class Real>
Complex<Real> phi_series(const RankOneModel<Real>& model, std::size_t n, const Complex<Real>& z,
                         std::type_identity_t<std::optional<Real>> tol = std::nullopt) {
  using std::pow;
  if (n == 0) throw ArgumentError("phi_series: n must be positive");
  detail::require_outside(model, z, "phi_series");
  const Real eps = tol ? *tol : model.series_tol();
  const Complex<Real> x = Real(1) / (z * z);
  const Real q = Real(4) / (magnitude(z) * magnitude(z));
  Real bound = pow(Real(2), static_cast<int>(n)) / Real(n);
  Real coef = Real(1) / Real(n);
  Complex<Real> xm(1);
  Complex<Real> sum(0);
  for (std::size_t m = 0;; ++m) {
    sum += xm * coef;
    bound *= q;
    if (bound / (Real(1) - q) < eps) break;
    coef = coef * Real(2 * m + n + 1) * Real(2 * m + n) / (Real(m + 1) * Real(m + n + 1));
    xm *= x;
  }
  return sum;
}

/// a_n = 2^{n-1} / n! * floor((n-1)/2)! * (1/2)_{floor(n/2)}.
template <class Real>
Real phi_prefactor(std::size_t n) {
  if (n == 0) throw ArgumentError("phi_prefactor: n must be positive");
  Real a(1);
  // 2^{n-1} / n!
  for (std::size_t k = 1; k <= n; ++k) a = a * (k == 1 ? Real(1) : Real(2)) / Real(k);
  for (std::size_t k = 2; k <= (n - 1) / 2; ++k) a *= Real(k);
  for (std::size_t k = 0; k < n / 2; ++k) a *= Real(2 * k + 1) / Real(2);
  return a;
}

/// Gauss series F(a, b; c; x) for |x| < 1 with a, b, c > 0. The tail is bounded
/// once the term ratio factor (a+m)(b+m)/((c+m)(m+1)) has dropped below 1.
template <class Real>
Complex<Real> hypergeometric_2f1(const Real& a, const Real& b, const Real& c, const Complex<Real>& x, const Real& tol) {
  const Real ax = magnitude(x);
  if (!(ax < 1)) throw DomainError("hypergeometric_2f1: |x| must be below 1");
  Complex<Real> term(1);
  Complex<Real> sum(0);
  for (std::size_t m = 0;; ++m) {
    sum += term;
    const Real ratio = (a + Real(m)) * (b + Real(m)) / ((c + Real(m)) * Real(m + 1));
    term *= x * ratio;
    if (ratio <= 1 && magnitude(term) / (Real(1) - ax) < tol) {
      sum += term;
      break;
    }
    if (m > 100000000) throw DomainError("hypergeometric_2f1: series did not converge");
  }
  return sum;
}

/// a_n F(n/2, (n+1)/2; n+1; 4/z^2).
template <class Real>
Complex<Real> phi_hypergeometric(const RankOneModel<Real>& model, std::size_t n, const Complex<Real>& z,
                                 std::type_identity_t<std::optional<Real>> tol = std::nullopt) {
  if (n == 0) throw ArgumentError("phi_hypergeometric: n must be positive");
  if (!(magnitude(z) > 2)) throw DomainError("phi_hypergeometric: |z| must exceed 2");
  const Real eps = tol ? *tol : model.series_tol();
  const Complex<Real> x = Real(4) / (z * z);
  return hypergeometric_2f1(Real(n) / Real(2), Real(n + 1) / Real(2), Real(n + 1), x, eps) * phi_prefactor<Real>(n);
}

/// w(z) = sum_n n c^{n-1} z^{-n} phi_n(z), truncated where C_1 (R0/|z|)^n summed
/// over the remaining n is below tol, C_1 = |z|^2 / (|c| (|z|^2 - 4)).
template <class Real>
Complex<Real> weight_w(const RankOneModel<Real>& model, const Complex<Real>& z, std::type_identity_t<std::optional<Real>> tol = std::nullopt) {
  detail::require_outside(model, z, "weight_w");
  const Real eps = tol ? *tol : model.series_tol();
  const Complex<Real> zinv = Real(1) / z;
  if (model.c() == Complex<Real>(0)) return zinv * phi_series(model, 1, z, eps);
  const Real R = magnitude(z);
  const Real C1 = R * R / (magnitude(model.c()) * (R * R - Real(4)));
  const Real x = model.R0() / R;
  Complex<Real> sum(0);
  Complex<Real> factor = zinv;  // c^{n-1} z^{-n}
  Real tail = C1 * x / (Real(1) - x);
  for (std::size_t n = 1;; ++n) {
    sum += factor * Real(n) * phi_series(model, n, z, eps);
    tail *= x;
    if (tail < eps) break;
    factor *= model.c() * zinv;
  }
  return sum;
}

namespace detail {

/// Smallest L with scale * sum_{l > L} (l + shift) x^l < tol (0 <= x < 1).
template <class Real>
std::size_t weighted_geometric_cutoff(const Real& x, const Real& tol, const Real& scale = Real(1), std::size_t shift = 0) {
  if (x == 0) return 0;
  const Real one(1);
  Real xl = x;  // x^{L+1}
  for (std::size_t L = 0;; ++L) {
    const Real tail = scale * xl * (Real(L + 1 + shift) / (one - x) + x / ((one - x) * (one - x)));
    if (tail < tol) return L;
    xl *= x;
    if (L > 100000000) throw DomainError("series cutoff not reached");
  }
}

}  // namespace detail

/// w evaluated through its collapsed Laurent coefficients
/// a_L = sum_{n + 2m = L} n c^{n-1} (2m+n-1)! / (m! (m+n)!) on |z| >= rho.
/// |a_L| <= L R0^L bounds the dropped tail.
template <class Real>
class LaurentWeight {
 public:
  LaurentWeight(const RankOneModel<Real>& model, const Real& rho, std::type_identity_t<std::optional<Real>> tol = std::nullopt)
      : rho_(rho) {
    if (!(rho > model.R0() * (Real(1) + Real(1e-9)))) throw DomainError("LaurentWeight: radius must exceed R0");
    const Real eps = tol ? *tol : model.series_tol();
    const std::size_t L0 = detail::weighted_geometric_cutoff(Real(model.R0() / rho), eps);
    coeffs_.assign(L0 + 1, Complex<Real>(0));
    // c^{n-1} for n = 1..L0
    std::vector<Complex<Real>> cpow(L0 + 1);
    cpow[1] = Complex<Real>(1);
    for (std::size_t n = 2; n <= L0; ++n) cpow[n] = cpow[n - 1] * model.c();
    for (std::size_t n = 1; n <= L0; ++n) {
      if (cpow[n] == Complex<Real>(0)) continue;
      Real coef = Real(1) / Real(n);
      for (std::size_t m = 0; n + 2 * m <= L0; ++m) {
        coeffs_[n + 2 * m] += cpow[n] * (Real(n) * coef);
        coef = coef * Real(2 * m + n + 1) * Real(2 * m + n) / (Real(m + 1) * Real(m + n + 1));
      }
    }
  }

  const Real& min_radius() const { return rho_; }
  /// Coefficient of z^{-L}; index 0 is always zero.
  const std::vector<Complex<Real>>& coefficients() const { return coeffs_; }

  Complex<Real> operator()(const Complex<Real>& z) const {
    if (!(magnitude(z) >= rho_ * (Real(1) - Real(1e-12))))
      throw DomainError("LaurentWeight: |z| below the prepared radius");
    const Complex<Real> y = Real(1) / z;
    Complex<Real> acc(0);
    for (std::size_t L = coeffs_.size(); L-- > 1;) acc = (acc + coeffs_[L]) * y;
    return acc;
  }

 private:
  Real rho_;
  std::vector<Complex<Real>> coeffs_;
};

/// g(z) = R^{-2} sum_j conj(s_{j+1}) (z / R^2)^j on |z| <= rho < R^2 / R0, with
/// the tail bounded through |s_n| <= (n+1) R0^{n+1}.
template <class Real>
class CorrectionWeight {
 public:
  CorrectionWeight(const RankOneModel<Real>& model, const Real& R, const Real& rho,
                   std::type_identity_t<std::optional<Real>> tol = std::nullopt)
      : R_(R), rho_(rho) {
    const Real R2 = R * R;
    if (!(rho * model.R0() < R2)) throw DomainError("CorrectionWeight: radius must stay below R^2/R0");
    const Real eps = tol ? *tol : model.series_tol();
    const Real q = model.R0() * rho / R2;
    // term_j <= (j+2) R0^2 q^j / R^2
    const std::size_t J = detail::weighted_geometric_cutoff(q, eps, Real(model.R0() * model.R0() / R2), 2);
    Real inv = Real(1) / R2;
    for (std::size_t j = 0; j <= J; ++j) {
      coeffs_.push_back(std::conj(moment_s(model, j + 1)) * inv);
      inv /= R2;
    }
  }

  const Real& R() const { return R_; }
  const Real& max_radius() const { return rho_; }
  const std::vector<Complex<Real>>& coefficients() const { return coeffs_; }

  Complex<Real> operator()(const Complex<Real>& z) const {
    if (!(magnitude(z) <= rho_ * (Real(1) + Real(1e-12))))
      throw DomainError("CorrectionWeight: |z| beyond the prepared radius");
    Complex<Real> acc(0);
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * z + coeffs_[j];
    return acc;
  }

 private:
  Real R_;
  Real rho_;
  std::vector<Complex<Real>> coeffs_;
};

template <class Real>
Complex<Real> weight_g(const RankOneModel<Real>& model, const Complex<Real>& z, const Real& R,
                       std::type_identity_t<std::optional<Real>> tol = std::nullopt) {
  if (!(magnitude(z) * model.R0() < R * R)) throw DomainError("weight_g: |z| must stay below R^2/R0");
  return CorrectionWeight<Real>(model, R, magnitude(z), tol)(z);
}

/// u^{-2} conj(w(conj(1/u))) - 1/u for 0 < |u| < 1/R0.
template <class Real>
Complex<Real> reflected_weight(const RankOneModel<Real>& model, const Complex<Real>& u,
                               std::type_identity_t<std::optional<Real>> tol = std::nullopt) {
  if (u == Complex<Real>(0) || !(magnitude(u) * model.R0() < 1))
    throw DomainError("reflected_weight: need 0 < |u| < 1/R0");
  const Complex<Real> inv = Real(1) / u;
  return std::conj(weight_w(model, std::conj(inv), tol)) * inv * inv - inv;
}

/// (1/2pi) (w + g)(alpha e^{i theta}) alpha e^{i theta}, with R = alpha inside g.
template <class Real>
Complex<Real> combined_weight_p(const RankOneModel<Real>& model, const Real& alpha, const Real& theta,
                                std::type_identity_t<std::optional<Real>> tol = std::nullopt) {
  using std::cos;
  using std::sin;
  if (!(alpha > model.R0())) throw DomainError("combined_weight_p: alpha must exceed R0");
  const Complex<Real> z = Complex<Real>(cos(theta), sin(theta)) * alpha;
  return (weight_w(model, z, tol) + weight_g(model, z, alpha, tol)) * z / two_pi<Real>();
}

/// p(theta) on the grid theta_j = 2 pi j / M through the prepared evaluators.
template <class Real>
std::vector<Complex<Real>> combined_weight_grid(const RankOneModel<Real>& model, const Real& alpha, std::size_t M) {
  const LaurentWeight<Real> w(model, alpha);
  const CorrectionWeight<Real> g(model, alpha, alpha);
  const auto roots = roots_of_unity<Real>(M);
  return parallel_map<Complex<Real>>(M, [&](std::size_t j) {
    const Complex<Real> z = roots[j] * alpha;
    return (w(z) + g(z)) * z / two_pi<Real>();
  });
}

/// f at z_k = R exp(2 pi i k / M).
template <class Real>
struct CircleSamples {
  Real radius;
  std::vector<Complex<Real>> z;
  std::vector<Complex<Real>> values;
};

template <class Real, class F>
CircleSamples<Real> sample_on_circle(F&& f, const Real& R, std::size_t M) {
  CircleSamples<Real> out{R, {}, {}};
  const auto roots = roots_of_unity<Real>(M);
  out.z.reserve(M);
  for (const auto& w : roots) out.z.push_back(w * R);
  out.values = parallel_map<Complex<Real>>(M, [&](std::size_t k) { return f(out.z[k]); });
  return out;
}

/// (1/2 pi i) oint f(z) z^{-j-1} dz = mean of f(z) z^{-j} over the samples.
template <class Real>
Complex<Real> laurent_coefficient(const CircleSamples<Real>& s, long j) {
  std::vector<Complex<Real>> terms(s.z.size());
  for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = s.values[k] * ipow(s.z[k], -j);
  return pairwise_sum(terms) / Real(terms.size());
}

/// Trapezoid value of (1/2 pi i) oint_{|z|=R} f(z) z^{-j-1} dz on M nodes.
template <class Real, class F>
Complex<Real> laurent_coefficient(F&& f, long j, const Real& R, std::size_t M) {
  return laurent_coefficient(sample_on_circle<Real>(std::forward<F>(f), R, M), j);
}

struct ResidualEntry {
  std::size_t n;
  std::size_t m;
  double residual;
};

struct ContourReport {
  double radius = 0;
  std::size_t nodes = 0;
  std::vector<ResidualEntry> entries;  ///< all 0 <= n, m <= n_max
  double max_residual = 0;
  double node_doubling_change = 0;  ///< 0 unless requested
};

namespace detail {

/// (1/2pi) sum_j p_n p_m f_j on a grid; f already carries any z dtheta factor.
template <class Real>
std::vector<std::vector<Complex<Real>>> polynomial_gram(const std::vector<Polynomial<Real>>& polys,
                                                        const std::vector<Complex<Real>>& z,
                                                        const std::vector<Complex<Real>>& f) {
  const std::size_t M = z.size();
  const std::size_t n = polys.size();
  std::vector<std::vector<Complex<Real>>> vals(n);
  for (std::size_t k = 0; k < n; ++k)
    vals[k] = parallel_map<Complex<Real>>(M, [&](std::size_t j) { return polys[k](z[j]); });
  std::vector<std::vector<Complex<Real>>> gram(n, std::vector<Complex<Real>>(n));
  std::vector<Complex<Real>> terms(M);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      for (std::size_t j = 0; j < M; ++j) terms[j] = vals[a][j] * vals[b][j] * f[j];
      gram[a][b] = gram[b][a] = pairwise_sum(terms) / Real(M);
    }
  return gram;
}

template <class Real>
std::vector<std::vector<Complex<Real>>> contour_gram(const RankOneModel<Real>& model, const LaurentWeight<Real>& w,
                                                     const Real& R, std::size_t n_max, std::size_t M) {
  const auto roots = roots_of_unity<Real>(M);
  std::vector<Complex<Real>> z(M);
  for (std::size_t j = 0; j < M; ++j) z[j] = roots[j] * R;
  const auto f = parallel_map<Complex<Real>>(M, [&](std::size_t j) { return w(z[j]) * z[j]; });
  std::vector<Polynomial<Real>> polys;
  for (std::size_t n = 0; n <= n_max; ++n) polys.push_back(p_closed_form(model, n));
  return polynomial_gram(polys, z, f);
}

}  // namespace detail

/// Residuals |(1/2 pi i) oint_{|z|=R} p_n p_m w dz - delta_{n,m}|.
template <class Real>
ContourReport contour_orthogonality(const RankOneModel<Real>& model, const Real& R, std::size_t n_max,
                                    std::size_t nodes, bool check_doubling = false) {
  if (!(R > model.R0())) throw DomainError("contour_orthogonality: R must exceed R0");
  const LaurentWeight<Real> w(model, R);
  const auto gram = detail::contour_gram(model, w, R, n_max, nodes);
  ContourReport report;
  report.radius = to_double(R);
  report.nodes = nodes;
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t m = 0; m <= n_max; ++m) {
      const double r = to_double(magnitude(Complex<Real>(gram[n][m] - Complex<Real>(n == m ? 1 : 0))));
      report.entries.push_back({n, m, r});
      report.max_residual = std::max(report.max_residual, r);
    }
  if (check_doubling) {
    const auto doubled = detail::contour_gram(model, w, R, n_max, 2 * nodes);
    for (std::size_t n = 0; n <= n_max; ++n)
      for (std::size_t m = 0; m <= n_max; ++m)
        report.node_doubling_change = std::max(report.node_doubling_change,
                                               to_double(magnitude(Complex<Real>(doubled[n][m] - gram[n][m]))));
  }
  return report;
}

template <class Real>
struct NegativeMoment {
  long n;
  Complex<Real> quadrature;  ///< (1/2 pi i) oint_{|z|=alpha} z^n (w + g) dz
  Complex<Real> expected;    ///< alpha^{2n} conj(s_{-n})
};

/// Negative power moment of w + g on |z| = alpha, n <= -1.
template <class Real>
NegativeMoment<Real> negative_moment(const RankOneModel<Real>& model, const Real& alpha, long n, std::size_t nodes) {
  using std::pow;
  if (n >= 0) throw ArgumentError("negative_moment: n must be negative");
  const LaurentWeight<Real> w(model, alpha);
  const CorrectionWeight<Real> g(model, alpha, alpha);
  const auto q = laurent_coefficient<Real>([&](const Complex<Real>& z) { return w(z) + g(z); }, -n - 1, alpha, nodes);

  const Complex<Real> e = std::conj(moment_s(model, static_cast<std::size_t>(-n))) * pow(alpha, static_cast<int>(2 * n));
  return {n, q, e};
}

struct AlphaScanEntry {
  double alpha = 0;
  double min_real = 0;
  double max_imag = 0;
  double orthogonality_residual = 0;
  double negative_moment_residual = 0;  ///< max over n = -1, -2
  bool nonnegative = false;             ///< min real >= -1e-8
  std::vector<double> theta;
  std::vector<std::complex<double>> p;
  std::vector<ResidualEntry> residuals;
};

struct AlphaScanReport {
  std::complex<double> c;
  double R0 = 0;
  std::size_t grid = 0;
  std::size_t n_max = 0;
  std::vector<AlphaScanEntry> entries;

  bool any_nonnegative() const {
    return std::any_of(entries.begin(), entries.end(), [](const AlphaScanEntry& e) { return e.nonnegative; });
  }
};

/// Default scan radii {1.25, 1.5, 2, 3} R0.
template <class Real>
std::vector<Real> default_alphas(const RankOneModel<Real>& model) {
  return {model.R0() * Real(5) / Real(4), model.R0() * Real(3) / Real(2), model.R0() * Real(2), model.R0() * Real(3)};
}

template <class Real>
AlphaScanReport alpha_scan(const RankOneModel<Real>& model, const std::vector<Real>& alphas, std::size_t grid = 2048,
                           std::size_t n_max = 8) {
  AlphaScanReport report;
  report.c = to_double(model.c());
  report.R0 = to_double(model.R0());
  report.grid = grid;
  report.n_max = n_max;
  const auto roots = roots_of_unity<Real>(grid);
  std::vector<Polynomial<Real>> polys;
  for (std::size_t n = 0; n <= n_max; ++n) polys.push_back(p_closed_form(model, n));

  for (const Real& alpha : alphas) {
    if (!(alpha > model.R0())) throw DomainError("alpha_scan: every alpha must exceed R0");
    AlphaScanEntry e;
    e.alpha = to_double(alpha);
    const auto p = combined_weight_grid(model, alpha, grid);
    e.min_real = to_double(p[0].real());
    for (std::size_t j = 0; j < grid; ++j) {
      e.min_real = std::min(e.min_real, to_double(p[j].real()));
      e.max_imag = std::max(e.max_imag, std::abs(to_double(p[j].imag())));
      e.theta.push_back(to_double(Real(two_pi<Real>() * Real(j) / Real(grid))));
      e.p.push_back(to_double(p[j]));
    }
    e.nonnegative = e.min_real >= -1e-8;

    std::vector<Complex<Real>> z(grid);
    std::vector<Complex<Real>> f(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      z[j] = roots[j] * alpha;
      f[j] = p[j] * two_pi<Real>();  // d theta integral as a grid mean
    }
    const auto gram = detail::polynomial_gram(polys, z, f);
    for (std::size_t n = 0; n <= n_max; ++n)
      for (std::size_t m = 0; m <= n_max; ++m) {
        const double r = to_double(magnitude(Complex<Real>(gram[n][m] - Complex<Real>(n == m ? 1 : 0))));
        e.residuals.push_back({n, m, r});
        e.orthogonality_residual = std::max(e.orthogonality_residual, r);
      }
    // (w + g)(z) z = 2 pi p, so (1/2 pi i) oint z^n (w + g) dz is 2 pi times the grid mean of p z^n.
    for (long n : {-1L, -2L}) {
      std::vector<Complex<Real>> terms(grid);
      for (std::size_t j = 0; j < grid; ++j) terms[j] = p[j] * ipow(z[j], n);
      const Complex<Real> quad = pairwise_sum(terms) * two_pi<Real>() / Real(grid);
      const Complex<Real> expected =
          std::conj(moment_s(model, static_cast<std::size_t>(-n))) * ipow(Complex<Real>(alpha), 2 * n);
      e.negative_moment_residual =
          std::max(e.negative_moment_residual, to_double(magnitude(Complex<Real>(quad - expected))));
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace bandspec

#endif  // BANDSPEC_RANK_ONE_HPP

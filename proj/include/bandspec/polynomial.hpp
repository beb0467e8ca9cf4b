#ifndef BANDSPEC_POLYNOMIAL_HPP
#define BANDSPEC_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bandspec/errors.hpp"
#include "bandspec/precision.hpp"

namespace bandspec {

/// Dense complex polynomial, coefficients stored low to high degree.
///
/// Only trailing coefficients that are exactly zero are stripped; rounding
/// noise is kept so that degree bookkeeping stays deterministic. The zero
/// polynomial has an empty coefficient vector and no degree.
template <class Real>
class Polynomial {
 public:
  using Scalar = Complex<Real>;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(Scalar c) { return Polynomial(std::vector<Scalar>{c}); }

  static Polynomial monomial(std::size_t degree, Scalar c = Scalar(1)) {
    std::vector<Scalar> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// std::nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }

  /// Coefficient of lambda^i; zero beyond the stored range.
  Scalar coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }

  Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

  /// Horner evaluation.
  Scalar operator()(const Scalar& z) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }

  /// Multiplication by lambda^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Scalar> out(coeffs_.size() + k);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

template <class Real>
Polynomial<Real> poly_add(const Polynomial<Real>& a, const Polynomial<Real>& b) {
  return a + b;
}

template <class Real>
Polynomial<Real> poly_mul(const Polynomial<Real>& a, const Polynomial<Real>& b) {
  return a * b;
}

/// Residue-class split: q.coeffs[n] = p.coeffs[n*N + m].
template <class Real>
Polynomial<Real> duran_split(const Polynomial<Real>& p, std::size_t N, std::size_t m) {
  if (N == 0) throw ArgumentError("duran_split: N must be positive");
  if (m >= N) throw ArgumentError("duran_split: residue class m out of range [0, N-1]");
  std::vector<Complex<Real>> out;
  const auto& c = p.coeffs();
  for (std::size_t i = m; i < c.size(); i += N) out.push_back(c[i]);
  return Polynomial<Real>(std::move(out));
}

/// Row vector (R_{N,0}(p)(z), ..., R_{N,N-1}(p)(z)); plain evaluation, no conjugation.
template <class Real>
std::vector<Complex<Real>> vectorize(const Polynomial<Real>& p, std::size_t N, const Complex<Real>& z) {
  if (N == 0) throw ArgumentError("vectorize: N must be positive");
  std::vector<Complex<Real>> row(N);
  const auto& c = p.coeffs();
  for (std::size_t m = 0; m < N && m < c.size(); ++m) {
    // Horner over the residue class m, highest index first.
    const std::size_t count = (c.size() - 1 - m) / N + 1;
    Complex<Real> acc(0);
    for (std::size_t k = count; k-- > 0;) acc = acc * z + c[k * N + m];
    row[m] = acc;
  }
  return row;
}

/// Maximum coefficientwise distance between two polynomials.
template <class Real>
Real max_coefficient_distance(const Polynomial<Real>& a, const Polynomial<Real>& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  Real d = 0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, magnitude(Complex<Real>(a.coefficient(i) - b.coefficient(i))));
  return d;
}

template <class Real>
Real max_coefficient(const Polynomial<Real>& a) {
  Real d = 0;
  for (const auto& c : a.coeffs()) d = std::max(d, magnitude(c));
  return d;
}

template <class To, class From>
Polynomial<To> convert(const Polynomial<From>& p) {
  std::vector<Complex<To>> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.emplace_back(To(c.real()), To(c.imag()));
  return Polynomial<To>(std::move(out));
}

}  // namespace bandspec

#endif  // BANDSPEC_POLYNOMIAL_HPP

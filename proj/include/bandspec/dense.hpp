#ifndef BANDSPEC_DENSE_HPP
#define BANDSPEC_DENSE_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bandspec/errors.hpp"
#include "bandspec/precision.hpp"

namespace bandspec {

/// Small dense complex matrix, row-major. Used for the N x N moment blocks,
/// density coefficients and the finite sections of the moment matrix.
template <class Real>
class CMatrix {
 public:
  using Scalar = Complex<Real>;

  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  CMatrix transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  CMatrix& operator+=(const CMatrix& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  CMatrix& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator*(CMatrix a, const Scalar& s) { return a *= s; }

  friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw ArgumentError("matrix product: shape mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  Real max_abs() const {
    Real m = 0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  Real frobenius_norm() const {
    using std::sqrt;
    Real s = 0;
    for (const auto& x : data_) s += std::norm(x);
    return sqrt(s);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

template <class Real>
Eigen::MatrixXcd to_eigen(const CMatrix<Real>& m, const Real& scale) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(Complex<Real>(m(i, j) / scale));
  return out;
}

}  // namespace detail

/// Largest singular value. The matrix is rescaled by its largest entry before
/// the double-precision SVD so the magnitude never leaves the double range.
template <class Real>
Real spectral_norm(const CMatrix<Real>& m) {
  const Real scale = m.max_abs();
  if (scale == 0) return Real(0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m, scale));
  return scale * Real(svd.singularValues()(0));
}

/// Smallest eigenvalue of a Hermitian matrix (double accuracy).
template <class Real>
double hermitian_min_eigenvalue(const CMatrix<Real>& m) {
  Eigen::MatrixXcd h = detail::to_eigen(m, Real(1));
  h = (h + h.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

/// Determinant by Gaussian elimination with partial pivoting, in working precision.
template <class Real>
Complex<Real> determinant(CMatrix<Real> a) {
  if (a.rows() != a.cols()) throw ArgumentError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Complex<Real> det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real best = magnitude(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real v = magnitude(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) return Complex<Real>(0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex<Real> f = a(i, k) / a(k, k);
      if (f == Complex<Real>(0)) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Euclidean distance from the last row of `a` to the span of its other rows.
/// The span is orthonormalised by modified Gram-Schmidt with one
/// re-orthogonalisation pass; a row whose residual is at most `drop_tol` counts
/// as dependent and does not enter the basis.
template <class Real>
Real last_row_distance(const CMatrix<Real>& a, const Real& drop_tol = Real(0)) {
  using std::sqrt;
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (n == 0) return Real(0);
  std::vector<std::vector<Complex<Real>>> basis;
  auto project_out = [&](std::vector<Complex<Real>>& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        Complex<Real> dot(0);
        for (std::size_t j = 0; j < m; ++j) dot += std::conj(q[j]) * v[j];
        for (std::size_t j = 0; j < m; ++j) v[j] -= dot * q[j];
      }
  };
  auto norm = [&](const std::vector<Complex<Real>>& v) {
    Real s = 0;
    for (const auto& x : v) s += std::norm(x);
    return sqrt(s);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<Complex<Real>> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = a(i, j);
    project_out(v);
    const Real len = norm(v);
    if (len <= drop_tol || len == 0) continue;
    for (auto& x : v) x /= len;
    basis.push_back(std::move(v));
  }
  std::vector<Complex<Real>> last(m);
  for (std::size_t j = 0; j < m; ++j) last[j] = a(n - 1, j);
  project_out(last);
  return norm(last);
}

}  // namespace bandspec

#endif  // BANDSPEC_DENSE_HPP

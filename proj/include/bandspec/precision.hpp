#ifndef BANDSPEC_PRECISION_HPP
#define BANDSPEC_PRECISION_HPP

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace bandspec {

/// 50 significant decimal digits. Expression templates are disabled so the
/// type composes with std::complex.
using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

template <class Real>
using Complex = std::complex<Real>;

template <class Real>
struct PrecisionTraits;

template <>
struct PrecisionTraits<double> {
  static constexpr const char* name = "double";
  static double series_tolerance() { return 1e-14; }
};

template <>
struct PrecisionTraits<Extended> {
  static constexpr const char* name = "extended";
  static Extended series_tolerance() { return Extended("1e-40"); }
};

template <class Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <class Real>
inline std::complex<double> to_double(const Complex<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Real>
inline Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
inline Real two_pi() {
  return boost::math::constants::two_pi<Real>();
}

/// Parses a decimal literal directly in the target precision (no double round trip).
template <class Real>
inline Real parse_real(const std::string& text) {
  if constexpr (std::is_same_v<Real, double>) {
    return std::stod(text);
  } else {
    return Real(text);
  }
}

template <class Real>
inline bool is_finite(const Real& x) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(x);
}

template <class Real>
inline bool is_finite(const Complex<Real>& z) {
  return is_finite(z.real()) && is_finite(z.imag());
}

/// |z|. The multiprecision exponent range is wide enough that the plain
/// square-root formula cannot overflow, and it is much cheaper than hypot.
template <class Real>
inline Real magnitude(const Complex<Real>& z) {
  if constexpr (std::is_same_v<Real, double>) {
    return std::abs(z);
  } else {
    using std::sqrt;
    return sqrt(z.real() * z.real() + z.imag() * z.imag());
  }
}

/// z^k for integer k by repeated squaring.
template <class Real>
inline Complex<Real> ipow(Complex<Real> z, long k) {
  if (k < 0) {
    z = Complex<Real>(1) / z;
    k = -k;
  }
  Complex<Real> r(1);
  while (k) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

}  // namespace bandspec

#endif  // BANDSPEC_PRECISION_HPP

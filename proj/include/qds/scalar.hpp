#pragma once

// Scalar substrate: exact Gaussian rationals (GMP-backed) and complex doubles.
//
// Generic code in the library is written against the small set of free
// functions declared here (conj_of, is_zero, magnitude, to_complex, ...) so that
// the same algorithm can run bit-exactly on structure constants with Gaussian
// rational entries, or approximately on arbitrary complex input.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qds {

using Complex = std::complex<double>;

/// Default tolerance for every approximate verdict.
inline constexpr double kDefaultTolerance = 1e-9;

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return GaussRational(re_, -im_); }
  /// |z|^2 as an exact rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return GaussRational(-a.re_, -a.im_); }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::string to_string(const GaussRational& z);

/// Parses "p", "-p", "p/q" into a canonical rational. Throws Error(Parse).
mpq_class parse_rational(std::string_view text);
/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const mpq_class& q);

/// Best rational approximation of x with denominator at most max_den, accepted
/// only if it lies within tol of x.
std::optional<mpq_class> snap_rational(double x, long max_den, double tol);
std::optional<GaussRational> snap_gauss(Complex z, long max_den, double tol);
/// Largest rational p/q <= x with q <= max_den found along the continued fraction.
mpq_class rational_lower_bound(double x, long max_den);

// ---- generic scalar interface -------------------------------------------------

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "gaussian-rational";
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "complex-float";
};

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "rational";
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "real-float";
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline GaussRational conj_of(const GaussRational& z) { return z.conj(); }
inline Complex conj_of(const Complex& z) { return std::conj(z); }

inline double magnitude(const GaussRational& z) {
  return z.is_real() ? std::abs(z.re().get_d()) : std::abs(z.to_complex());
}
inline double magnitude(const Complex& z) { return std::abs(z); }

/// Exact zero test for exact scalars; |z| <= tol for floats.
inline bool is_zero(const GaussRational& z, double /*tol*/ = 0.0) { return z.is_zero(); }
inline bool is_zero(const Complex& z, double tol = 0.0) { return std::abs(z) <= tol; }

inline double conj_of(double x) { return x; }
inline double magnitude(double x) { return std::abs(x); }
inline bool is_zero(double x, double tol = 0.0) { return std::abs(x) <= tol; }

inline mpq_class conj_of(const mpq_class& x) { return x; }
inline double magnitude(const mpq_class& x) { return std::abs(x.get_d()); }
inline bool is_zero(const mpq_class& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }

inline Complex to_complex(const GaussRational& z) { return z.to_complex(); }
inline Complex to_complex(const Complex& z) { return z; }

template <class T>
T scalar_from_rational(const mpq_class& re, const mpq_class& im = 0);
template <>
inline GaussRational scalar_from_rational<GaussRational>(const mpq_class& re, const mpq_class& im) {
  return GaussRational(re, im);
}
template <>
inline Complex scalar_from_rational<Complex>(const mpq_class& re, const mpq_class& im) {
  return {re.get_d(), im.get_d()};
}

/// The imaginary unit in either mode.
template <class T>
T imaginary_unit() {
  return scalar_from_rational<T>(0, 1);
}

}  // namespace qds

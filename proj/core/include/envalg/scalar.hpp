#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace envalg {

using Rational = mpq_class;

/// Parses "a", "a/b", "-a/b" or a finite decimal such as "0.25" into a
/// canonical rational. Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "a" for integers, "a/b" otherwise.
std::string format_rational(const Rational& q);

/// Exact rational image of a finite double (every binary64 value is a dyadic
/// rational). Throws std::invalid_argument for NaN or infinity.
Rational rational_from_double(double x);

double to_double(const Rational& q);

/// Natural log of a positive rational, accurate to double precision even when
/// numerator and denominator overflow a double.
double log_rational(const Rational& q);

/// Gaussian rational re + i*im with both parts kept in lowest terms.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2, exact.
  Rational norm_sq() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "a/b" for real values, "[a/b, c/d]" for complex ones.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

Scalar scalar_from_complex(std::complex<double> z);

/// n! as an exact integer-valued rational.
Rational factorial(unsigned n);

/// Exact test of sqrt(a) <= sqrt(b) + k*sqrt(c) for nonnegative rationals a, b,
/// c and nonnegative integer k.
bool sqrt_sum_le(const Rational& a, const Rational& b, const Rational& c, unsigned long k);

}  // namespace envalg

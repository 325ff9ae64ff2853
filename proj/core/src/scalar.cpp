#include "envalg/scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace envalg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw std::invalid_argument("malformed denominator in '" + std::string(text) + "'");
    }
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    if (!frac.empty() && !all_digits(frac)) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    std::string_view int_part = s.substr(0, dot);
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string digits(int_part);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    mpz_class whole = parse_integer(digits, text);
    mpz_class scale = 1;
    mpz_class frac_value = 0;
    if (!frac.empty()) {
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      frac_value = mpz_class(std::string(frac), 10);
    }
    if (negative) frac_value = -frac_value;
    Rational q(whole * scale + frac_value, scale);
    q.canonicalize();
    return q;
  }

  return Rational(parse_integer(s, text));
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value cannot be made rational");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

double log_rational(const Rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("log of non-positive rational");
  auto log_z = [](const mpz_class& z) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
  };
  return log_z(q.get_num()) - log_z(q.get_den());
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero scalar");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational d = o.norm_sq();
  Rational re = (re_ * o.re_ + im_ * o.im_) / d;
  Rational im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Scalar::to_string() const {
  if (is_real()) return format_rational(re_);
  return "[" + format_rational(re_) + ", " + format_rational(im_) + "]";
}

Scalar scalar_from_complex(std::complex<double> z) {
  return Scalar(rational_from_double(z.real()), rational_from_double(z.imag()));
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

bool sqrt_sum_le(const Rational& a, const Rational& b, const Rational& c, unsigned long k) {
  if (sgn(a) < 0 || sgn(b) < 0 || sgn(c) < 0) {
    throw std::invalid_argument("sqrt_sum_le expects nonnegative arguments");
  }
  Rational kk = Rational(k) * Rational(k);
  Rational d = a - b - kk * c;
  if (sgn(d) <= 0) return true;
  return d * d <= 4 * kk * b * c;
}

}  // namespace envalg

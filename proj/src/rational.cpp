#include "swkb/rational.hpp"

#include <stdexcept>

namespace swkb {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_strings(const std::string& num, const std::string& den) {
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::domain_error("rational with zero denominator");
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational binomial(const Rational& r, int j) {
  if (j < 0) return Rational(0);
  Rational out(1);
  for (int m = 0; m < j; ++m) out = out * (r - Rational(m)) / Rational(m + 1);
  return out;
}

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  if (re_.is_zero()) return im_.str() + "*i";
  std::string s = "(" + re_.str();
  s += im_.sign() < 0 ? "-" + (-im_).str() : "+" + im_.str();
  s += "*i)";
  return s;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("gaussian rational division by zero");
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

}  // namespace swkb

#pragma once

#include <mpfr.h>

#include <climits>

#include <string>

#include "periods/rational.hpp"

namespace periods {

// Decimal digits -> working bits, with guard bits.
inline mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 24);
}

// MPFR value with its own precision; binary results take the larger one.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 128);
  BigFloat(long v, mpfr_prec_t bits);
  BigFloat(const Rat& q, mpfr_prec_t bits);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat pi(mpfr_prec_t bits);
  static BigFloat log2(mpfr_prec_t bits);

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(BigFloat a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  BigFloat& mul_si(long k);
  BigFloat& div_si(long k);

  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return mpfr_less_p(a.v_, b.v_);
  }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const { return is_zero() ? LONG_MIN : mpfr_get_exp(v_); }

  // Scientific notation with the given significant digits.
  std::string to_string(int digits) const;

  friend BigFloat abs(BigFloat a) {
    mpfr_abs(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat sqrt(BigFloat a) {
    mpfr_sqrt(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat log(BigFloat a) {
    mpfr_log(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat exp(BigFloat a) {
    mpfr_exp(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat cos(BigFloat a) {
    mpfr_cos(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat sin(BigFloat a) {
    mpfr_sin(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x);

 private:
  mpfr_t v_;
};

BigFloat abs(BigFloat a);
BigFloat sqrt(BigFloat a);
BigFloat log(BigFloat a);
BigFloat exp(BigFloat a);
BigFloat cos(BigFloat a);
BigFloat sin(BigFloat a);
BigFloat atan2(const BigFloat& y, const BigFloat& x);

// 10^-k at the given precision.
BigFloat pow10_neg(int k, mpfr_prec_t bits);

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(BigFloat r) : re(r), im(0, r.bits()) {}

  BigFloat re, im;

  mpfr_prec_t bits() const { return re.bits(); }

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const BigFloat& s) {
    re *= s;
    im *= s;
    return *this;
  }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator-(BigComplex a) { return BigComplex(-a.re, -a.im); }

  BigFloat norm() const;  // |z|
  BigFloat arg() const;
  BigComplex conj() const { return BigComplex(re, -im); }
  BigComplex log() const;  // principal branch
  std::string to_string(int digits) const;
};

}  // namespace periods

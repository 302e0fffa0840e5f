#include "periods/bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace periods {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rat& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.bits());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::log2(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_log2(r.v_, MPFR_RNDN);
  return r;
}

namespace {
void widen(mpfr_ptr v, mpfr_srcptr o) {
  if (mpfr_get_prec(o) > mpfr_get_prec(v)) mpfr_prec_round(v, mpfr_get_prec(o), MPFR_RNDN);
}
}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::mul_si(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::div_si(long k) {
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(std::max(y.bits(), x.bits()));
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  if (is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m = m.substr(1);
  }
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  long exp10 = static_cast<long>(e) - 1;
  if (exp10 != 0) out += "e" + std::to_string(exp10);
  return out;
}

BigFloat pow10_neg(int k, mpfr_prec_t bits) {
  BigFloat r(1, bits);
  BigFloat ten(10, bits);
  for (int i = 0; i < k; ++i) r /= ten;
  return r;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  BigFloat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat d = o.re * o.re + o.im * o.im;
  BigFloat r = (re * o.re + im * o.im) / d;
  BigFloat i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigFloat BigComplex::norm() const { return sqrt(re * re + im * im); }

BigFloat BigComplex::arg() const { return atan2(im, re); }

BigComplex BigComplex::log() const { return BigComplex(periods::log(norm()), arg()); }

std::string BigComplex::to_string(int digits) const {
  std::string r = re.to_string(digits);
  if (im.is_zero()) return r;
  std::string i = im.to_string(digits);
  if (i[0] == '-') return r + " - " + i.substr(1) + "*i";
  return r + " + " + i + "*i";
}

}  // namespace periods

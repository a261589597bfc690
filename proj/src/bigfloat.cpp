#include "feigenjet/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace feigenjet {

BigFloat BigFloat::from_string(const std::string& dec, long prec) {
  BigFloat r(prec);
  mpfr_set_str(r.v_, dec.c_str(), 10, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::two_pow(long e, long prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::with_precision(long prec) const {
  BigFloat r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::bin(const BigFloat& a, const BigFloat& b, mpfr_bin_fn fn) {
  long p = mpfr_get_prec(a.v_);
  long q = mpfr_get_prec(b.v_);
  BigFloat r(p > q ? p : q);
  fn(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::bin_up(const BigFloat& a, const BigFloat& b, mpfr_bin_fn fn) {
  long p = mpfr_get_prec(a.v_);
  long q = mpfr_get_prec(b.v_);
  BigFloat r(p > q ? p : q);
  fn(r.v_, a.v_, b.v_, MPFR_RNDU);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::mul_pow2(long e) const {
  BigFloat r(precision());
  mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow_ui(const BigFloat& x, unsigned long k) {
  BigFloat r(x.precision());
  mpfr_pow_ui(r.v_, x.v_, k, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow_ui_up(const BigFloat& x, unsigned long k) {
  BigFloat r(x.precision());
  mpfr_pow_ui(r.v_, x.v_, k, MPFR_RNDU);
  return r;
}

BigFloat BigFloat::round_decimals(long l) const {
  // nearest multiple of 10^-l, computed at a precision wide enough that the
  // scaling itself does not disturb the result
  long prec = precision() + 64;
  mpfr_t scale, t;
  mpfr_init2(scale, prec);
  mpfr_init2(t, prec);
  mpfr_ui_pow_ui(scale, 10, static_cast<unsigned long>(l), MPFR_RNDN);
  mpfr_mul(t, v_, scale, MPFR_RNDN);
  mpfr_rint(t, t, MPFR_RNDN);
  BigFloat r(precision());
  mpfr_div(r.v_, t, scale, MPFR_RNDN);
  mpfr_clear(t);
  mpfr_clear(scale);
  return r;
}

std::string BigFloat::str(size_t digits) const {
  if (digits == 0) {
    // bits * log10(2), plus slack so parsing round-trips
    digits = static_cast<size_t>(static_cast<double>(precision()) * 0.30103) + 3;
  }
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%zuRg", digits);
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
  return std::string(buf.data());
}

BigFloat BigComplex::abs() const {
  BigFloat r(precision());
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
  return r;
}

BigFloat BigComplex::abs_up() const {
  BigFloat r(precision());
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDU);
  return r;
}

}  // namespace feigenjet

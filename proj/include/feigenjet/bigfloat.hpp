#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace feigenjet {

// Correctly-rounded arbitrary-precision real, a thin value-semantic wrapper
// over mpfr_t. Every value carries its own precision; binary operations
// round to the wider of the two operand precisions (round-to-nearest).
// The *_up variants round toward +inf and are reserved for norm and error
// accumulation, which must stay one-sided.
class BigFloat {
 public:
  static constexpr long kMinPrec = 64;

  BigFloat() { mpfr_init2(v_, kMinPrec); mpfr_set_zero(v_, 1); }
  explicit BigFloat(long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, 1); }
  BigFloat(double x, long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(long x, long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(int x, long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_si(v_, x, MPFR_RNDN); }

  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, kMinPrec); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_string(const std::string& dec, long prec);
  static BigFloat two_pow(long e, long prec);  // 2^e, exact

  long precision() const { return mpfr_get_prec(v_); }
  BigFloat with_precision(long prec) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_div); }
  BigFloat operator-() const;

  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  static BigFloat add_up(const BigFloat& a, const BigFloat& b) { return bin_up(a, b, mpfr_add); }
  static BigFloat sub_up(const BigFloat& a, const BigFloat& b) { return bin_up(a, b, mpfr_sub); }
  static BigFloat mul_up(const BigFloat& a, const BigFloat& b) { return bin_up(a, b, mpfr_mul); }
  static BigFloat div_up(const BigFloat& a, const BigFloat& b) { return bin_up(a, b, mpfr_div); }

  BigFloat abs() const;
  BigFloat sqrt() const;
  BigFloat mul_pow2(long e) const;  // exact scaling by 2^e
  static BigFloat pow_ui(const BigFloat& x, unsigned long k);   // RNDN
  static BigFloat pow_ui_up(const BigFloat& x, unsigned long k);

  // Round every bit beyond the l-th decimal digit: nearest multiple of 10^-l.
  BigFloat round_decimals(long l) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const { return is_zero() ? mpfr_get_emin() : mpfr_get_exp(v_); }
  // Decimal string with enough digits to reproduce the value at its precision.
  std::string str(size_t digits = 0) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  static long clamp(long p) { return p < kMinPrec ? kMinPrec : p; }
  using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static BigFloat bin(const BigFloat& a, const BigFloat& b, mpfr_bin_fn fn);
  static BigFloat bin_up(const BigFloat& a, const BigFloat& b, mpfr_bin_fn fn);

  mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) { return x.abs(); }
inline BigFloat sqrt(const BigFloat& x) { return x.sqrt(); }
inline const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
inline const BigFloat& min(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }

// Complex value with BigFloat components. Component precisions are kept equal.
struct BigComplex {
  BigFloat re, im;

  BigComplex() = default;
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(double r, double i, long prec) : re(r, prec), im(i, prec) {}
  explicit BigComplex(long prec) : re(prec), im(prec) {}

  long precision() const { return re.precision() > im.precision() ? re.precision() : im.precision(); }
  BigComplex with_precision(long p) const { return {re.with_precision(p), im.with_precision(p)}; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigFloat& s, const BigComplex& z) { return {s * z.re, s * z.im}; }
  BigComplex operator-() const { return {-re, -im}; }

  BigComplex conj() const { return {re, -im}; }
  BigFloat norm2() const { return re * re + im * im; }  // |z|^2
  BigFloat abs() const;                                  // RNDN
  BigFloat abs_up() const;                               // rounds up, for error bounds
  double re_d() const { return re.to_double(); }
  double im_d() const { return im.to_double(); }
};

}  // namespace feigenjet

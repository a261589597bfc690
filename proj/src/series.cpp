#include "feigenjet/series.hpp"

#include <algorithm>

#include "feigenjet/errors.hpp"

namespace feigenjet {

EvenSeries::EvenSeries(std::vector<BigFloat> coeffs, BigFloat rho, BigFloat coeff_err)
    : coeffs_(std::move(coeffs)), rho_(std::move(rho)), coeff_err_(std::move(coeff_err)) {
  if (coeffs_.empty()) coeffs_.push_back(BigFloat(0.0, BigFloat::kMinPrec));
  if (coeff_err_.sign() < 0) throw Error("coeff_err must be nonnegative");
}

EvenSeries EvenSeries::from_doubles(const std::vector<double>& c, double rho, long prec) {
  std::vector<BigFloat> cs;
  cs.reserve(c.size());
  for (double x : c) cs.emplace_back(x, prec);
  return EvenSeries(std::move(cs), BigFloat(rho, prec), BigFloat(0.0, prec));
}

namespace {

void check_inside(const BigComplex& z, const BigFloat& rho) {
  if (z.abs_up() > rho)
    throw DomainExceeded("|z|=" + z.abs_up().str(6) + " > rho=" + rho.str(6));
}

}  // namespace

BigComplex EvenSeries::eval(const BigComplex& z) const {
  check_inside(z, rho_);
  long prec = std::max(precision(), z.precision());
  mpfr_t ur, ui, ar, ai, t0, t1;
  mpfr_init2(ur, prec); mpfr_init2(ui, prec);
  mpfr_init2(ar, prec); mpfr_init2(ai, prec);
  mpfr_init2(t0, prec); mpfr_init2(t1, prec);
  // u = z^2
  mpfr_mul(t0, z.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_mul(t1, z.im.raw(), z.im.raw(), MPFR_RNDN);
  mpfr_sub(ur, t0, t1, MPFR_RNDN);
  mpfr_mul(ui, z.re.raw(), z.im.raw(), MPFR_RNDN);
  mpfr_mul_2si(ui, ui, 1, MPFR_RNDN);
  // Horner: acc = acc*u + c_k
  mpfr_set_zero(ar, 1); mpfr_set_zero(ai, 1);
  for (int k = degree_bound(); k >= 0; --k) {
    mpfr_mul(t0, ar, ur, MPFR_RNDN);
    mpfr_mul(t1, ai, ui, MPFR_RNDN);
    mpfr_sub(t0, t0, t1, MPFR_RNDN);
    mpfr_mul(t1, ar, ui, MPFR_RNDN);
    mpfr_mul(ai, ai, ur, MPFR_RNDN);
    mpfr_add(ai, ai, t1, MPFR_RNDN);
    mpfr_add(ar, t0, coeffs_[static_cast<std::size_t>(k)].raw(), MPFR_RNDN);
  }
  BigComplex out{BigFloat(prec), BigFloat(prec)};
  mpfr_set(out.re.raw(), ar, MPFR_RNDN);
  mpfr_set(out.im.raw(), ai, MPFR_RNDN);
  mpfr_clear(ur); mpfr_clear(ui); mpfr_clear(ar); mpfr_clear(ai);
  mpfr_clear(t0); mpfr_clear(t1);
  return out;
}

BigComplex EvenSeries::eval_deriv(const BigComplex& z) const {
  check_inside(z, rho_);
  long prec = std::max(precision(), z.precision());
  // f'(z) = 2 z H'(z^2): Horner for H' in u, then multiply by 2z
  mpfr_t ur, ui, ar, ai, t0, t1, ck;
  mpfr_init2(ur, prec); mpfr_init2(ui, prec);
  mpfr_init2(ar, prec); mpfr_init2(ai, prec);
  mpfr_init2(t0, prec); mpfr_init2(t1, prec); mpfr_init2(ck, prec);
  mpfr_mul(t0, z.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_mul(t1, z.im.raw(), z.im.raw(), MPFR_RNDN);
  mpfr_sub(ur, t0, t1, MPFR_RNDN);
  mpfr_mul(ui, z.re.raw(), z.im.raw(), MPFR_RNDN);
  mpfr_mul_2si(ui, ui, 1, MPFR_RNDN);
  mpfr_set_zero(ar, 1); mpfr_set_zero(ai, 1);
  for (int k = degree_bound(); k >= 1; --k) {
    mpfr_mul(t0, ar, ur, MPFR_RNDN);
    mpfr_mul(t1, ai, ui, MPFR_RNDN);
    mpfr_sub(t0, t0, t1, MPFR_RNDN);
    mpfr_mul(t1, ar, ui, MPFR_RNDN);
    mpfr_mul(ai, ai, ur, MPFR_RNDN);
    mpfr_add(ai, ai, t1, MPFR_RNDN);
    mpfr_mul_si(ck, coeffs_[static_cast<std::size_t>(k)].raw(), k, MPFR_RNDN);
    mpfr_add(ar, t0, ck, MPFR_RNDN);
  }
  // out = 2 z * acc
  BigComplex out{BigFloat(prec), BigFloat(prec)};
  mpfr_mul(t0, ar, z.re.raw(), MPFR_RNDN);
  mpfr_mul(t1, ai, z.im.raw(), MPFR_RNDN);
  mpfr_sub(t0, t0, t1, MPFR_RNDN);
  mpfr_mul_2si(out.re.raw(), t0, 1, MPFR_RNDN);
  mpfr_mul(t0, ar, z.im.raw(), MPFR_RNDN);
  mpfr_mul(t1, ai, z.re.raw(), MPFR_RNDN);
  mpfr_add(t0, t0, t1, MPFR_RNDN);
  mpfr_mul_2si(out.im.raw(), t0, 1, MPFR_RNDN);
  mpfr_clear(ur); mpfr_clear(ui); mpfr_clear(ar); mpfr_clear(ai);
  mpfr_clear(t0); mpfr_clear(t1); mpfr_clear(ck);
  return out;
}

BigFloat EvenSeries::eval_real(const BigFloat& x) const {
  BigFloat u = x * x;
  return eval_u(u);
}

BigFloat EvenSeries::eval_deriv_real(const BigFloat& x) const {
  BigFloat u = x * x;
  return BigFloat(2l, x.precision()) * x * deriv_u(u);
}

BigFloat EvenSeries::eval_u(const BigFloat& u) const {
  long prec = std::max(precision(), u.precision());
  mpfr_t acc;
  mpfr_init2(acc, prec);
  mpfr_set_zero(acc, 1);
  for (int k = degree_bound(); k >= 0; --k) {
    mpfr_mul(acc, acc, u.raw(), MPFR_RNDN);
    mpfr_add(acc, acc, coeffs_[static_cast<std::size_t>(k)].raw(), MPFR_RNDN);
  }
  BigFloat out(prec);
  mpfr_set(out.raw(), acc, MPFR_RNDN);
  mpfr_clear(acc);
  return out;
}

BigFloat EvenSeries::deriv_u(const BigFloat& u) const {
  long prec = std::max(precision(), u.precision());
  mpfr_t acc, ck;
  mpfr_init2(acc, prec);
  mpfr_init2(ck, prec);
  mpfr_set_zero(acc, 1);
  for (int k = degree_bound(); k >= 1; --k) {
    mpfr_mul(acc, acc, u.raw(), MPFR_RNDN);
    mpfr_mul_si(ck, coeffs_[static_cast<std::size_t>(k)].raw(), k, MPFR_RNDN);
    mpfr_add(acc, acc, ck, MPFR_RNDN);
  }
  BigFloat out(prec);
  mpfr_set(out.raw(), acc, MPFR_RNDN);
  mpfr_clear(acc);
  mpfr_clear(ck);
  return out;
}

std::vector<double> EvenSeries::coeffs_d() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.to_double());
  return out;
}

BigFloat EvenSeries::l1_norm(const BigFloat& rho) const {
  long prec = std::max(precision(), rho.precision());
  BigFloat rho2 = BigFloat::mul_up(rho, rho);
  BigFloat acc(0.0, prec), p(1.0, prec);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    acc = BigFloat::add_up(acc, BigFloat::mul_up(coeffs_[k].abs(), p));
    p = BigFloat::mul_up(p, rho2);
  }
  return acc;
}

EvenSeries EvenSeries::round_coeffs(long l) const {
  std::vector<BigFloat> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.round_decimals(l));
  long prec = precision();
  BigFloat tenl(prec);
  mpfr_ui_pow_ui(tenl.raw(), 10, static_cast<unsigned long>(l), MPFR_RNDD);
  BigFloat half(0.5, prec);
  BigFloat err = BigFloat::add_up(coeff_err_, BigFloat::div_up(half, tenl));
  return EvenSeries(std::move(out), rho_, err);
}

EvenSeries EvenSeries::truncate(int n) const {
  std::size_t keep = static_cast<std::size_t>(n / 2) + 1;  // u-degree n/2
  if (keep >= coeffs_.size()) return *this;
  std::vector<BigFloat> out(coeffs_.begin(), coeffs_.begin() + static_cast<long>(keep));
  // exact dropped mass at rho, converted to a uniform per-coefficient bound
  long prec = precision();
  BigFloat rho2 = BigFloat::mul_up(rho_, rho_);
  BigFloat mass(0.0, prec);
  BigFloat p = BigFloat::pow_ui_up(rho2, static_cast<unsigned long>(keep));
  for (std::size_t k = keep; k < coeffs_.size(); ++k) {
    mass = BigFloat::add_up(mass, BigFloat::mul_up(coeffs_[k].abs(), p));
    p = BigFloat::mul_up(p, rho2);
  }
  if (rho_ < BigFloat(1.0, prec)) {
    // l1 mass controls per-coefficient error only after rescaling
    BigFloat denom = BigFloat::pow_ui(rho_.with_precision(prec), 2 * keep);
    mass = BigFloat::div_up(mass, denom);
  }
  return EvenSeries(std::move(out), rho_, BigFloat::add_up(coeff_err_, mass));
}

EvenSeries EvenSeries::scale_arg(const BigFloat& s) const {
  if (s.is_zero()) throw Error("scale_arg: zero scale");
  long prec = std::max(precision(), s.precision());
  BigFloat s2 = s * s;
  std::vector<BigFloat> out;
  out.reserve(coeffs_.size());
  BigFloat p(1.0, prec);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * p);
    p = p * s2;
  }
  BigFloat sabs = s.abs();
  BigFloat new_rho = rho_ / sabs;
  // uniform coefficient error scales with the largest |s|^{2k} applied
  BigFloat factor =
      sabs > BigFloat(1.0, prec)
          ? BigFloat::pow_ui_up(sabs, 2 * static_cast<unsigned long>(degree_bound()))
          : BigFloat(1.0, prec);
  return EvenSeries(std::move(out), new_rho, BigFloat::mul_up(coeff_err_, factor));
}

BigFloat EvenSeries::cauchy_tail_bound(const BigFloat& M, const BigFloat& rho,
                                       const BigFloat& rho_prime, int n) {
  if (!(rho_prime > rho)) throw Error("cauchy_tail_bound: need rho' > rho");
  long prec = std::max(M.precision(), rho.precision());
  BigFloat r = BigFloat::div_up(rho, rho_prime);
  BigFloat rn = BigFloat::pow_ui_up(r, static_cast<unsigned long>(n + 1));
  BigFloat one(1.0, prec);
  return BigFloat::div_up(BigFloat::mul_up(M, rn), one - r);
}

namespace {

// a*b truncated to u-degree <= cap; dropped l1 mass at rho2-powers
// accumulates into `dropped` (all error arithmetic rounds up)
std::vector<BigFloat> poly_mul_trunc(const std::vector<BigFloat>& a,
                                     const std::vector<BigFloat>& b, std::size_t cap,
                                     const BigFloat& rho2, BigFloat& dropped, long prec) {
  std::size_t na = a.size(), nb = b.size();
  std::size_t full = na + nb - 1;
  std::size_t keep = std::min(full, cap + 1);
  std::vector<BigFloat> out(keep, BigFloat(0.0, prec));
  mpfr_t t;
  mpfr_init2(t, prec);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      std::size_t k = i + j;
      if (k < keep) {
        mpfr_mul(t, a[i].raw(), b[j].raw(), MPFR_RNDN);
        mpfr_add(out[k].raw(), out[k].raw(), t, MPFR_RNDN);
      } else {
        dropped = BigFloat::add_up(
            dropped, BigFloat::mul_up(BigFloat::mul_up(a[i].abs(), b[j].abs()),
                                      BigFloat::pow_ui_up(rho2, k)));
      }
    }
  }
  mpfr_clear(t);
  return out;
}

}  // namespace

EvenSeries compose(const EvenSeries& f, const EvenSeries& g, int out_degree) {
  long prec = std::max(f.precision(), g.precision());
  std::size_t cap = static_cast<std::size_t>(out_degree / 2);

  // range containment: sup |g| on its disk must stay inside f's disk
  BigFloat range = g.l1_norm(g.rho());
  if (range > f.rho())
    throw DomainExceeded("compose: range bound " + range.str(6) + " exceeds rho " +
                         f.rho().str(6));

  BigFloat rho2 = BigFloat::mul_up(g.rho(), g.rho());
  BigFloat dropped(0.0, prec);

  // v = g^2 (series in u), then Horner over f's u-coefficients
  std::vector<BigFloat> v = poly_mul_trunc(g.coeffs(), g.coeffs(), cap, rho2, dropped, prec);
  std::vector<BigFloat> acc{BigFloat(0.0, prec)};
  for (int k = f.degree_bound(); k >= 0; --k) {
    acc = poly_mul_trunc(acc, v, cap, rho2, dropped, prec);
    acc[0] += f.coeff(static_cast<std::size_t>(k));
  }

  // propagated coefficient errors:
  //   from f: sum_k |dc_k| B^k with B = (l1 g)^2
  //   from g: Lip(f) * l1 mass of g's coefficient error
  BigFloat B = BigFloat::mul_up(range, range);
  BigFloat one(1.0, prec);
  BigFloat sumB(0.0, prec), p(1.0, prec);
  for (int k = 0; k <= f.degree_bound(); ++k) {
    sumB = BigFloat::add_up(sumB, p);
    p = BigFloat::mul_up(p, B);
  }
  BigFloat err_from_f = BigFloat::mul_up(f.coeff_err(), sumB);

  BigFloat lip(0.0, prec);
  p = BigFloat(1.0, prec);
  for (int k = 1; k <= f.degree_bound(); ++k) {
    lip = BigFloat::add_up(lip, BigFloat::mul_up(BigFloat(static_cast<long>(k), prec),
                                                 BigFloat::mul_up(f.coeff(static_cast<std::size_t>(k)).abs(), p)));
    p = BigFloat::mul_up(p, B);
  }
  BigFloat g_mass(0.0, prec);
  p = BigFloat(1.0, prec);
  for (int k = 0; k <= g.degree_bound(); ++k) {
    g_mass = BigFloat::add_up(g_mass, p);
    p = BigFloat::mul_up(p, rho2);
  }
  g_mass = BigFloat::mul_up(g_mass, g.coeff_err());
  // |d(g^2)| <= 2 |g| |dg| + |dg|^2 in the l1 algebra
  BigFloat dG2 = BigFloat::add_up(
      BigFloat::mul_up(BigFloat(2.0, prec), BigFloat::mul_up(range, g_mass)),
      BigFloat::mul_up(g_mass, g_mass));
  BigFloat err_from_g = BigFloat::mul_up(lip, dG2);

  BigFloat err = BigFloat::add_up(BigFloat::add_up(err_from_f, err_from_g), dropped);
  if (g.rho() < one) {
    BigFloat denom = BigFloat::pow_ui(g.rho().with_precision(prec),
                                      2 * static_cast<unsigned long>(cap));
    err = BigFloat::div_up(err, denom);
  }
  acc.resize(std::min(acc.size(), cap + 1), BigFloat(0.0, prec));
  return EvenSeries(std::move(acc), g.rho(), err);
}

}  // namespace feigenjet

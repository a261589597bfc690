#pragma once

#include <vector>

#include "feigenjet/bigfloat.hpp"

namespace feigenjet {

// Truncated even power series sum c_k z^{2k}, stored in the u = z^2 variable
// so evenness holds by representation. `rho` is the validity radius in z;
// `coeff_err` is a uniform bound on the error of every stored coefficient.
class EvenSeries {
 public:
  EvenSeries() = default;
  EvenSeries(std::vector<BigFloat> coeffs, BigFloat rho, BigFloat coeff_err);

  static EvenSeries from_doubles(const std::vector<double>& c, double rho, long prec);

  int degree_bound() const { return static_cast<int>(coeffs_.size()) - 1; }  // u-degree
  std::size_t terms() const { return coeffs_.size(); }
  const BigFloat& coeff(std::size_t k) const { return coeffs_[k]; }
  const std::vector<BigFloat>& coeffs() const { return coeffs_; }
  const BigFloat& rho() const { return rho_; }
  const BigFloat& coeff_err() const { return coeff_err_; }
  long precision() const { return coeffs_.empty() ? BigFloat::kMinPrec : coeffs_[0].precision(); }

  void set_rho(BigFloat r) { rho_ = std::move(r); }

  // Horner evaluation in z^2; requires |z| <= rho.
  BigComplex eval(const BigComplex& z) const;
  BigComplex eval_deriv(const BigComplex& z) const;
  BigFloat eval_real(const BigFloat& x) const;
  BigFloat eval_deriv_real(const BigFloat& x) const;
  // the u-variable map H (f(z) = H(z^2)) and its u-derivative
  BigFloat eval_u(const BigFloat& u) const;
  BigFloat deriv_u(const BigFloat& u) const;

  // fast double shadows for geometry work
  std::vector<double> coeffs_d() const;

  BigFloat l1_norm(const BigFloat& rho) const;  // sum |c_k| rho^{2k}, rounded up

  EvenSeries round_coeffs(long l) const;
  // drop z-degrees above n; the dropped mass at `rho` is folded into coeff_err
  EvenSeries truncate(int n) const;
  EvenSeries scale_arg(const BigFloat& s) const;  // f(s z)

  // Cauchy remainder bound: tail of a function bounded by M on rho' > rho,
  // summed over z-degrees > n at radius rho.
  static BigFloat cauchy_tail_bound(const BigFloat& M, const BigFloat& rho,
                                    const BigFloat& rho_prime, int n);

  friend EvenSeries compose(const EvenSeries& f, const EvenSeries& g, int out_degree);

 private:
  std::vector<BigFloat> coeffs_;  // index k holds the z^{2k} coefficient
  BigFloat rho_{1.0, BigFloat::kMinPrec};
  BigFloat coeff_err_{0.0, BigFloat::kMinPrec};
};

EvenSeries compose(const EvenSeries& f, const EvenSeries& g, int out_degree);

}  // namespace feigenjet

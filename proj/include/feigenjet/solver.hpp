#pragma once

#include <complex>
#include <string>
#include <vector>

#include "feigenjet/series.hpp"

namespace feigenjet {

struct SolverConfig {
  int degree = 80;            // u-degree: unknown coefficients c_1..c_degree
  double norm_rho = 1.0;      // radius where the weighted l1 norm is controlled
  double validity_rho = 2.2;  // radius where the truncated series is trusted
  double newton_tol = 1e-13;
  int max_iters = 80;
  int jacobian_refresh_interval = 8;
  long decimal_round = 120;   // per-iterate coefficient rounding, decimal digits
  long precision_bits = 448;
  long jacobian_precision_bits = 160;
};

// Double-precision shadow of the solved map, for geometry and raster work.
// eval/deriv extend past the series disk through the fixed-point relation.
struct MapShadow {
  std::vector<double> h;  // u-coefficients
  double lambda = 0;
  double inv_lambda = 0;
  double x0 = 0, a = 0;
  double rho_safe = 0;

  std::complex<double> eval(std::complex<double> z, int depth = 0) const;
  std::complex<double> deriv(std::complex<double> z, int depth = 0) const;
  double eval_real(double x) const { return eval( {x, 0.0} ).real(); }
};

// Solved fixed point: the series, the scaling constant lambda = -F(1), the
// first positive zero x0, the point a with F(a) = -x0/lambda, and the
// functional-equation residual measured on a grid.
class FeigenbaumMap {
 public:
  FeigenbaumMap() = default;
  FeigenbaumMap(EvenSeries series, BigFloat lambda, BigFloat x0, BigFloat a,
                BigFloat residual);

  const EvenSeries& series() const { return series_; }
  const BigFloat& lambda() const { return lambda_; }
  const BigFloat& x0() const { return x0_; }
  const BigFloat& a() const { return a_; }
  const BigFloat& residual() const { return residual_; }

  // lambda^m, positive sign, at the precision of `ref`
  BigFloat lambda_pow(unsigned long m, long prec) const;

  // series evaluation with the fixed-point extension outside the disk
  BigComplex eval_ext(const BigComplex& z, int depth = 0) const;
  BigComplex deriv_ext(const BigComplex& z, int depth = 0) const;
  BigFloat eval_ext_real(const BigFloat& x) const;
  BigFloat deriv_ext_real(const BigFloat& x) const;

  // orbit shortcut: F^{2^m}(z) = (-lambda)^m F(z / lambda^m)
  BigComplex shortcut_iterate(const BigComplex& z, unsigned long m) const;
  // d/dz F^{2^m}(z) = (-1)^m F'(z / lambda^m)
  BigComplex shortcut_deriv(const BigComplex& z, unsigned long m) const;

  MapShadow shadow() const;

  // critical point on the imaginary axis: smallest y>0 with F'(iy) = 0
  BigFloat imag_corner() const;

  void save(const std::string& path) const;
  static FeigenbaumMap load(const std::string& path, double revalidate_tol = 1e-11);

 private:
  EvenSeries series_;
  BigFloat lambda_, x0_, a_, residual_;
};

// One application of the renormalization-style operator
//   g |-> (1/g(1)) g(g(g(1) z))
// computed on the even carrier; a fixed point reproduces itself.
EvenSeries renorm_apply(const EvenSeries& g, double norm_rho);

// Newton iteration on the truncated coefficient vector, with per-iterate
// decimal rounding and truncation; extracts lambda, x0, a and verifies the
// critical-point identities.
FeigenbaumMap solve_fixed_point(const SolverConfig& cfg, const EvenSeries& initial);
FeigenbaumMap solve_fixed_point(const SolverConfig& cfg);  // default initial

// sup |F(z) + (1/lambda) F(F(lambda z))| over a 64-point grid in the disk
// of radius `grid_rho`
BigFloat functional_residual(const EvenSeries& series, const BigFloat& lambda,
                             double grid_rho);

}  // namespace feigenjet

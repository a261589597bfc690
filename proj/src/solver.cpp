#include "feigenjet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "feigenjet/errors.hpp"

namespace feigenjet {

// ---------------------------------------------------------------- MapShadow

std::complex<double> MapShadow::eval(std::complex<double> z, int depth) const {
  if (std::abs(z) <= rho_safe) {
    std::complex<double> u = z * z, acc = 0.0;
    for (int k = static_cast<int>(h.size()) - 1; k >= 0; --k) acc = acc * u + h[static_cast<std::size_t>(k)];
    return acc;
  }
  if (depth > 32) throw DomainExceeded("shadow eval recursion");
  std::complex<double> w = eval(lambda * z, depth + 1);
  return -inv_lambda * eval(w, depth + 1);
}

std::complex<double> MapShadow::deriv(std::complex<double> z, int depth) const {
  if (std::abs(z) <= rho_safe) {
    std::complex<double> u = z * z, acc = 0.0;
    for (int k = static_cast<int>(h.size()) - 1; k >= 1; --k)
      acc = acc * u + double(k) * h[static_cast<std::size_t>(k)];
    return 2.0 * z * acc;
  }
  if (depth > 32) throw DomainExceeded("shadow deriv recursion");
  std::complex<double> w = eval(lambda * z, depth + 1);
  return -deriv(lambda * z, depth + 1) * deriv(w, depth + 1);
}

// ------------------------------------------------------------- renormalize

namespace {

EvenSeries scalar_mul(const EvenSeries& f, const BigFloat& s) {
  std::vector<BigFloat> out;
  out.reserve(f.terms());
  for (std::size_t k = 0; k < f.terms(); ++k) out.push_back(f.coeff(k) * s);
  return EvenSeries(std::move(out), f.rho(), BigFloat::mul_up(f.coeff_err(), s.abs()));
}

}  // namespace

EvenSeries renorm_apply(const EvenSeries& g, double norm_rho) {
  long prec = g.precision();
  BigFloat g1 = g.eval_u(BigFloat(1.0, prec));
  if (g1.abs() < BigFloat(1e-6, prec)) throw DegenerateMap("g(1) too small");
  EvenSeries inner = g.scale_arg(g1);
  inner.set_rho(BigFloat(norm_rho, prec));
  EvenSeries comp;
  try {
    comp = compose(g, inner, 2 * g.degree_bound());
  } catch (const DomainExceeded& e) {
    throw ContainmentFailure(e.what());
  }
  BigFloat one(1.0, prec);
  return scalar_mul(comp, one / g1);
}

// ------------------------------------------------------------ small LU

namespace {

struct Lu {
  int n = 0;
  std::vector<BigFloat> a;  // row-major
  std::vector<int> piv;

  BigFloat& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const BigFloat& at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

  void factor() {
    piv.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      int p = k;
      BigFloat best = at(k, k).abs();
      for (int i = k + 1; i < n; ++i)
        if (at(i, k).abs() > best) { best = at(i, k).abs(); p = i; }
      if (best.is_zero()) throw NoConvergence("singular jacobian");
      piv[static_cast<std::size_t>(k)] = p;
      if (p != k)
        for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      for (int i = k + 1; i < n; ++i) {
        at(i, k) /= at(k, k);
        for (int j = k + 1; j < n; ++j) at(i, j) -= at(i, k) * at(k, j);
      }
    }
  }

  std::vector<BigFloat> solve(std::vector<BigFloat> b) const {
    for (int k = 0; k < n; ++k) {
      int p = piv[static_cast<std::size_t>(k)];
      if (p != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
      for (int i = k + 1; i < n; ++i)
        b[static_cast<std::size_t>(i)] -= at(i, k) * b[static_cast<std::size_t>(k)];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j)
        b[static_cast<std::size_t>(i)] -= at(i, j) * b[static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] /= at(i, i);
    }
    return b;
  }
};

std::vector<BigFloat> defect_of(const EvenSeries& g, double norm_rho) {
  EvenSeries t = renorm_apply(g, norm_rho);
  int n = g.degree_bound();
  std::vector<BigFloat> d;
  d.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    BigFloat tk = (k < static_cast<int>(t.terms())) ? t.coeff(static_cast<std::size_t>(k))
                                                    : BigFloat(0.0, g.precision());
    d.push_back(tk - g.coeff(static_cast<std::size_t>(k)));
  }
  return d;
}

BigFloat defect_norm(const std::vector<BigFloat>& d, double norm_rho, long prec) {
  BigFloat r2(norm_rho * norm_rho, prec), p(r2), acc(0.0, prec);
  for (const auto& x : d) {
    acc = BigFloat::add_up(acc, BigFloat::mul_up(x.abs(), p));
    p = BigFloat::mul_up(p, r2);
  }
  return acc;
}

EvenSeries make_series(const std::vector<BigFloat>& tail_coeffs, long prec, double rho) {
  std::vector<BigFloat> cs;
  cs.reserve(tail_coeffs.size() + 1);
  cs.emplace_back(1.0, prec);  // normalization: value 1 at the origin
  for (const auto& c : tail_coeffs) cs.push_back(c.with_precision(prec));
  return EvenSeries(std::move(cs), BigFloat(rho, prec), BigFloat(0.0, prec));
}

std::vector<BigFloat> coeff_tail(const EvenSeries& g) {
  std::vector<BigFloat> x;
  x.reserve(g.terms() - 1);
  for (std::size_t k = 1; k < g.terms(); ++k) x.push_back(g.coeff(k));
  return x;
}

// one Newton stage at fixed degree/precision
EvenSeries newton_stage(const SolverConfig& cfg, int degree, long prec, double tol,
                        const EvenSeries& initial) {
  EvenSeries g = [&] {
    std::vector<BigFloat> x = coeff_tail(initial);
    x.resize(static_cast<std::size_t>(degree), BigFloat(0.0, prec));
    return make_series(x, prec, cfg.validity_rho);
  }();

  Lu lu;
  lu.n = degree;
  bool have_lu = false;
  int iters_since_refresh = 0;
  long jac_prec = cfg.jacobian_precision_bits;

  auto build_jacobian = [&](const EvenSeries& at) {
    std::vector<BigFloat> x0 = coeff_tail(at);
    EvenSeries gj = make_series(x0, jac_prec, cfg.validity_rho);
    std::vector<BigFloat> d0 = defect_of(gj, cfg.norm_rho);
    BigFloat h = BigFloat::two_pow(-jac_prec / 2, jac_prec);
    lu.a.assign(static_cast<std::size_t>(degree * degree), BigFloat(0.0, jac_prec));
    std::vector<BigFloat> xj = coeff_tail(gj);
    for (int j = 0; j < degree; ++j) {
      BigFloat saved = xj[static_cast<std::size_t>(j)];
      xj[static_cast<std::size_t>(j)] = saved + h;
      EvenSeries gpert = make_series(xj, jac_prec, cfg.validity_rho);
      std::vector<BigFloat> dj = defect_of(gpert, cfg.norm_rho);
      for (int i = 0; i < degree; ++i)
        lu.at(i, j) = (dj[static_cast<std::size_t>(i)] - d0[static_cast<std::size_t>(i)]) / h;
      xj[static_cast<std::size_t>(j)] = saved;
    }
    lu.factor();
    have_lu = true;
    iters_since_refresh = 0;
  };

  std::vector<BigFloat> d = defect_of(g, cfg.norm_rho);
  BigFloat nd = defect_norm(d, cfg.norm_rho, prec);
  BigFloat target(tol, prec);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (nd <= target) return g;
    if (!have_lu || iters_since_refresh >= cfg.jacobian_refresh_interval) build_jacobian(g);
    std::vector<BigFloat> rhs;
    rhs.reserve(d.size());
    for (const auto& x : d) rhs.push_back(-x);
    std::vector<BigFloat> delta = lu.solve(std::move(rhs));

    // damped update with per-iterate rounding and truncation
    BigFloat step(1.0, prec);
    for (int tries = 0;; ++tries) {
      std::vector<BigFloat> xs = coeff_tail(g);
      for (int j = 0; j < degree; ++j)
        xs[static_cast<std::size_t>(j)] += step * delta[static_cast<std::size_t>(j)];
      EvenSeries cand =
          make_series(xs, prec, cfg.validity_rho).round_coeffs(cfg.decimal_round).truncate(2 * degree);
      std::vector<BigFloat> dc = defect_of(cand, cfg.norm_rho);
      BigFloat nc = defect_norm(dc, cfg.norm_rho, prec);
      if (nc < nd || tries >= 6) {
        g = EvenSeries(
            [&] { std::vector<BigFloat> cs = coeff_tail(cand); cs.insert(cs.begin(), BigFloat(1.0, prec)); return cs; }(),
            BigFloat(cfg.validity_rho, prec), BigFloat(0.0, prec));
        d = std::move(dc);
        nd = nc;
        break;
      }
      step = step.mul_pow2(-1);
    }
    ++iters_since_refresh;
  }
  if (nd <= target) return g;
  throw NoConvergence("newton stage: defect " + nd.str(6) + " above " + std::to_string(tol));
}

BigFloat bisect_then_newton(const EvenSeries& f, const BigFloat& target, BigFloat lo,
                            BigFloat hi, long prec) {
  BigFloat flo = f.eval_real(lo) - target;
  BigFloat fhi = f.eval_real(hi) - target;
  if (flo.sign() * fhi.sign() >= 0) throw RootNotBracketed("sign conditions failed");
  for (int i = 0; i < 24; ++i) {  // width 2^-20 relative from a unit-ish bracket
    BigFloat mid = (lo + hi).mul_pow2(-1);
    BigFloat fm = f.eval_real(mid) - target;
    if (fm.sign() == flo.sign()) { lo = mid; flo = fm; }
    else { hi = mid; fhi = fm; }
  }
  BigFloat x = (lo + hi).mul_pow2(-1);
  for (int i = 0; i < 64; ++i) {
    BigFloat fx = f.eval_real(x) - target;
    BigFloat dfx = f.eval_deriv_real(x);
    if (dfx.is_zero()) break;
    BigFloat dx = fx / dfx;
    x -= dx;
    if (dx.abs() < BigFloat::two_pow(-prec + 8, prec) * BigFloat::max(x.abs(), BigFloat(1.0, prec))) break;
  }
  return x;
}

}  // namespace

BigFloat functional_residual(const EvenSeries& series, const BigFloat& lambda,
                             double grid_rho) {
  long prec = series.precision();
  BigFloat best(0.0, prec);
  BigFloat pi(prec);
  mpfr_const_pi(pi.raw(), MPFR_RNDN);
  for (int ir = 1; ir <= 8; ++ir) {
    BigFloat r = BigFloat(grid_rho, prec) * BigFloat(ir, prec) / BigFloat(8, prec);
    for (int ia = 0; ia < 8; ++ia) {
      BigFloat theta = pi * BigFloat(2 * ia + 1, prec) / BigFloat(8, prec);
      BigFloat c(prec), s(prec);
      mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
      BigComplex z{r * c, r * s};
      BigComplex fz = series.eval(z);
      BigComplex inner = series.eval(BigComplex{lambda * z.re, lambda * z.im});
      BigComplex ffl = series.eval(inner);
      BigComplex res = fz + BigFloat(1.0, prec) / lambda * ffl;
      BigFloat m = res.abs_up();
      if (m > best) best = m;
    }
  }
  return best;
}

FeigenbaumMap::FeigenbaumMap(EvenSeries series, BigFloat lambda, BigFloat x0, BigFloat a,
                             BigFloat residual)
    : series_(std::move(series)), lambda_(std::move(lambda)), x0_(std::move(x0)),
      a_(std::move(a)), residual_(std::move(residual)) {}

BigFloat FeigenbaumMap::lambda_pow(unsigned long m, long prec) const {
  BigFloat out(prec);
  mpfr_pow_ui(out.raw(), lambda_.raw(), m, MPFR_RNDN);
  return out;
}

BigComplex FeigenbaumMap::eval_ext(const BigComplex& z, int depth) const {
  if (!(z.abs_up() > series_.rho())) return series_.eval(z);
  if (depth > 40) throw DomainExceeded("eval_ext recursion limit");
  long prec = z.precision();
  BigFloat lam = lambda_.with_precision(prec);
  BigComplex w = eval_ext(BigComplex{lam * z.re, lam * z.im}, depth + 1);
  BigComplex inner = eval_ext(w, depth + 1);
  BigFloat scale = -(BigFloat(1.0, prec) / lam);
  return {scale * inner.re, scale * inner.im};
}

BigComplex FeigenbaumMap::deriv_ext(const BigComplex& z, int depth) const {
  if (!(z.abs_up() > series_.rho())) return series_.eval_deriv(z);
  if (depth > 40) throw DomainExceeded("deriv_ext recursion limit");
  long prec = z.precision();
  BigFloat lam = lambda_.with_precision(prec);
  BigComplex lz{lam * z.re, lam * z.im};
  BigComplex w = eval_ext(lz, depth + 1);
  BigComplex d1 = deriv_ext(lz, depth + 1);
  BigComplex d2 = deriv_ext(w, depth + 1);
  return -(d1 * d2);
}

BigFloat FeigenbaumMap::eval_ext_real(const BigFloat& x) const {
  return eval_ext(BigComplex{x, BigFloat(0.0, x.precision())}).re;
}

BigFloat FeigenbaumMap::deriv_ext_real(const BigFloat& x) const {
  return deriv_ext(BigComplex{x, BigFloat(0.0, x.precision())}).re;
}

BigComplex FeigenbaumMap::shortcut_iterate(const BigComplex& z, unsigned long m) const {
  long prec = z.precision();
  BigFloat lm = lambda_pow(m, prec);
  BigComplex w{z.re / lm, z.im / lm};
  BigComplex v = series_.eval(w);
  BigFloat scale = (m % 2 == 0) ? lm : -lm;
  return {scale * v.re, scale * v.im};
}

BigComplex FeigenbaumMap::shortcut_deriv(const BigComplex& z, unsigned long m) const {
  long prec = z.precision();
  BigFloat lm = lambda_pow(m, prec);
  BigComplex w{z.re / lm, z.im / lm};
  BigComplex v = series_.eval_deriv(w);
  return (m % 2 == 0) ? v : -v;
}

MapShadow FeigenbaumMap::shadow() const {
  MapShadow s;
  s.h = series_.coeffs_d();
  s.lambda = lambda_.to_double();
  s.inv_lambda = 1.0 / s.lambda;
  s.x0 = x0_.to_double();
  s.a = a_.to_double();
  s.rho_safe = series_.rho().to_double() * 0.999;
  return s;
}

BigFloat FeigenbaumMap::imag_corner() const {
  long prec = series_.precision();
  // first sign change of H' on the negative u axis
  BigFloat step(-0.05, prec);
  BigFloat u(0.0, prec);
  BigFloat prev = series_.deriv_u(u);
  BigFloat lo(prec), hi(prec);
  bool found = false;
  for (int i = 1; i <= 160; ++i) {
    BigFloat ui = BigFloat(i, prec) * step;
    BigFloat vi = series_.deriv_u(ui);
    if (vi.sign() * prev.sign() < 0) {
      lo = BigFloat(i - 1, prec) * step;
      hi = ui;
      found = true;
      break;
    }
    prev = vi;
  }
  if (!found) throw RootNotBracketed("no critical point on the imaginary axis");
  BigFloat flo = series_.deriv_u(lo);
  for (int i = 0; i < 40; ++i) {
    BigFloat mid = (lo + hi).mul_pow2(-1);
    BigFloat fm = series_.deriv_u(mid);
    if (fm.sign() == flo.sign()) { lo = mid; flo = fm; }
    else { hi = mid; }
  }
  // secant refinement
  BigFloat x1 = lo, x2 = hi;
  BigFloat f1 = series_.deriv_u(x1), f2 = series_.deriv_u(x2);
  for (int i = 0; i < 48; ++i) {
    if ((f2 - f1).is_zero()) break;
    BigFloat x3 = x2 - f2 * (x2 - x1) / (f2 - f1);
    x1 = x2; f1 = f2;
    x2 = x3; f2 = series_.deriv_u(x2);
  }
  return (-x2).sqrt();
}

FeigenbaumMap solve_fixed_point(const SolverConfig& cfg) {
  EvenSeries initial = EvenSeries::from_doubles({1.0, -1.52763, 0.10482}, cfg.validity_rho, 192);
  return solve_fixed_point(cfg, initial);
}

FeigenbaumMap solve_fixed_point(const SolverConfig& cfg, const EvenSeries& initial) {
  if (cfg.degree < 10) throw Error("solver degree must be at least 10");
  // cheap low-degree stage, then the full system seeded from it
  int d1 = std::max(10, cfg.degree / 2);
  long p1 = std::max<long>(192, cfg.precision_bits / 2);
  SolverConfig c1 = cfg;
  c1.precision_bits = p1;
  c1.jacobian_precision_bits = std::min<long>(cfg.jacobian_precision_bits, p1);
  EvenSeries g1 = newton_stage(c1, d1, p1, std::max(cfg.newton_tol, 1e-9), initial);
  EvenSeries g = newton_stage(cfg, cfg.degree, cfg.precision_bits, cfg.newton_tol * 0.1, g1);

  long prec = cfg.precision_bits;
  BigFloat lambda = -g.eval_u(BigFloat(1.0, prec));
  if (!(lambda > BigFloat(0.0, prec)) || !(lambda < BigFloat(1.0, prec)))
    throw NoConvergence("lambda outside (0,1)");

  BigFloat residual = functional_residual(g, lambda, cfg.norm_rho / 2.0);
  if (residual > BigFloat(cfg.newton_tol, prec))
    throw NoConvergence("residual " + residual.str(6) + " above tolerance");

  BigFloat x0 =
      bisect_then_newton(g, BigFloat(0.0, prec), BigFloat(0.0, prec), BigFloat(1.0, prec), prec);
  BigFloat inv_lambda = BigFloat(1.0, prec) / lambda;
  BigFloat x0_over_lambda = x0 / lambda;
  BigFloat a = bisect_then_newton(g, -x0_over_lambda, BigFloat(1.0, prec), x0_over_lambda, prec);

  FeigenbaumMap map(g, lambda, x0, a, residual);

  // identity checks; failures mean the solve went somewhere wrong
  BigFloat tol(1e-9, prec);
  auto check = [&](const BigFloat& v, const char* what) {
    if (v.abs() > tol) throw NoConvergence(std::string("identity failed: ") + what + " = " + v.str(6));
  };
  check(map.eval_ext_real(lambda * x0) - x0, "F(lambda x0) - x0");
  check(g.eval_real(BigFloat(1.0, prec)) + lambda, "F(1) + lambda");
  check(map.eval_ext_real(x0_over_lambda) + inv_lambda, "F(x0/lambda) + 1/lambda");
  check(map.eval_ext_real(a / lambda) - inv_lambda * inv_lambda, "F(a/lambda) - 1/lambda^2");
  check(map.deriv_ext_real(x0_over_lambda), "F'(x0/lambda)");
  check(map.deriv_ext_real(a / lambda), "F'(a/lambda)");
  // ordering from the critical-point layout
  if (!(lambda * x0 < x0 && x0 < BigFloat(1.0, prec) && BigFloat(1.0, prec) < a &&
        a < x0_over_lambda))
    throw NoConvergence("constant ordering violated");
  return map;
}

// ------------------------------------------------------------ cache file

void FeigenbaumMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  const EvenSeries& s = series_;
  out << "FEIGF 1 " << s.degree_bound() << " " << s.precision() << " " << s.rho().str() << "\n";
  for (int k = 0; k <= s.degree_bound(); ++k)
    out << k << " " << s.coeff(static_cast<std::size_t>(k)).str() << "\n";
  out << "lambda " << lambda_.str() << "\n";
  out << "x0 " << x0_.str() << "\n";
  out << "a " << a_.str() << "\n";
  out << "residual " << residual_.str() << "\n";
}

FeigenbaumMap FeigenbaumMap::load(const std::string& path, double revalidate_tol) {
  std::ifstream in(path);
  if (!in) throw MissingCache(path);
  std::string magic;
  int version = 0, degree = 0;
  long prec = 0;
  std::string rho_str;
  in >> magic >> version >> degree >> prec >> rho_str;
  if (magic != "FEIGF" || version != 1 || degree < 1 || prec < 64)
    throw Error("bad coefficient cache header in " + path);
  std::vector<BigFloat> cs(static_cast<std::size_t>(degree) + 1, BigFloat(prec));
  for (int k = 0; k <= degree; ++k) {
    int idx;
    std::string val;
    if (!(in >> idx >> val) || idx != k) throw Error("bad coefficient line in " + path);
    cs[static_cast<std::size_t>(k)] = BigFloat::from_string(val, prec);
  }
  BigFloat lambda(prec), x0(prec), a(prec), residual(prec);
  for (int i = 0; i < 4; ++i) {
    std::string key, val;
    if (!(in >> key >> val)) throw Error("truncated cache " + path);
    BigFloat v = BigFloat::from_string(val, prec);
    if (key == "lambda") lambda = v;
    else if (key == "x0") x0 = v;
    else if (key == "a") a = v;
    else if (key == "residual") residual = v;
    else throw Error("unexpected key '" + key + "' in " + path);
  }
  EvenSeries s(std::move(cs), BigFloat::from_string(rho_str, prec), BigFloat(0.0, prec));
  BigFloat check = functional_residual(s, lambda, 0.5);
  BigFloat limit = BigFloat::max(BigFloat(revalidate_tol, prec),
                                 residual.mul_pow2(1));
  if (check > limit)
    throw Error("cache revalidation failed: residual " + check.str(6) + " in " + path);
  return FeigenbaumMap(std::move(s), std::move(lambda), std::move(x0), std::move(a),
                       std::move(residual));
}

}  // namespace feigenjet

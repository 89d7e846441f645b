#include "spinon/formfactor/tdl.hpp"

#include "spinon/numeric/error.hpp"
#include "spinon/numeric/quadrature.hpp"
#include "spinon/special/gamma.hpp"

namespace spinon {

namespace {

// (lambda - mu) / (2i)
Complex half_shift(const Complex& lambda, const Real& mu) {
  Complex d = lambda - Complex(mu);
  return Complex(d.im / 2.0, -d.re / 2.0);
}

Real log_abs_g(const Complex& z, BarnesRoute route) { return log_barnes_g(z, route).re; }

}  // namespace

HolePair HolePair::of(const BetheState& excited) {
  if (excited.holes.size() != 2) throw Error(ErrorKind::InvalidArgument, "state does not carry two holes");
  return {excited.holes[0], excited.holes[1]};
}

Complex phi(const Complex& lambda, const HolePair& holes) {
  const int s = lambda.im.sign();
  if (s == 0) throw Error(ErrorKind::RealAxisArgument, "phi is defined off the real axis only");
  Complex log_sum(0);
  for (const Real* mu : {&holes.mu1, &holes.mu2}) {
    Complex z = half_shift(lambda, *mu);
    if (s < 0) z = -z;
    log_sum += log_gamma(z) - log_gamma(z + 0.5);
  }
  // +-1/(2i) = -+i/2
  Complex pre(Real(0), Real(s > 0 ? -0.5 : 0.5));
  return pre * exp(log_sum);
}

Real chi(const Real& lambda, const HolePair& holes) {
  const Real half_pi = const_pi() / 2.0;
  return tanh(half_pi * (lambda - holes.mu1)) * tanh(half_pi * (lambda - holes.mu2));
}

Real omega_n(const Real& lambda, const HolePair& holes, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "omega_n needs n >= 1");
  const Real h = Real(n) - 0.5;
  const Real h2 = h * h;
  Real num = Real(n) * Real(n);
  for (const Real* mu : {&holes.mu1, &holes.mu2}) {
    Real d = lambda - *mu;
    num *= h2 + d * d / 4.0;
  }
  return num / (h2 * h2 * h2);
}

Real omega_n_baxter(const Real& lambda, const HolePair& holes, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "omega_n needs n >= 1");
  const Real h = Real(n) - 0.5;
  const Real h2 = h * h;
  Real v = 16.0 * Real(n) * Real(n) / (h2 * h2 * h2);
  v *= norm(phi(Complex(lambda, Real(2 * n)), holes));
  v *= norm(phi(Complex(lambda, Real(2 * n - 1)), holes));
  for (const Real* mu : {&holes.mu1, &holes.mu2}) {
    Real d = lambda - *mu;
    Real f = h2 + d * d / 4.0;
    v *= f * f;
  }
  return v;
}

Real omega_partial_product(const Real& delta, int terms) {
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  const Complex z(Real(0), -delta / 2.0);
  Real log_p(0);
  for (int n = 1; n <= terms; ++n) {
    const Real rn(n);
    log_p += 2.0 * (log(rn - 0.5) - log(rn));
    log_p += 4.0 * (log_gamma(rn + 0.5) - log_gamma(rn));
    log_p += 4.0 * (log_gamma(z + (rn - 0.5)) - log_gamma(z + rn)).re;
  }
  Real r = exp(log_p);
  r.round_to(bits);
  return r;
}

Real omega_infinite_product(const Real& delta, BarnesRoute route) {
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  const Complex z(Real(0), -delta / 2.0);
  Real l = 2.0 * log_abs_g(Complex(0.5), route) + 2.0 * log_abs_g(Complex(2), route) -
           6.0 * log_abs_g(Complex(1.5), route);
  l += 2.0 * (log_abs_g(z + 1.0, route) + log_abs_g(Complex(1) - z, route));
  l -= 2.0 * (log_abs_g(z + 0.5, route) + log_abs_g(Complex(0.5) - z, route));
  Real r = exp(l);
  r.round_to(bits);
  return r;
}

Real ff_closed_form(const HolePair& holes, BarnesRoute route) {
  const Real delta = holes.delta();
  if (delta.is_zero()) return Real(0);
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  const Complex z(Real(0), -delta / 2.0);
  Real l = log(Real(2)) - 4.0 * log_abs_g(Complex(0.5), route);
  l += 2.0 * (log_abs_g(z, route) + log_abs_g(z + 1.0, route));
  l -= 2.0 * (log_abs_g(z + 0.5, route) + log_abs_g(z + 1.5, route));
  Real r = exp(l);
  r.round_to(bits);
  return r;
}

Real integral_rep_integrand(const Real& t, const Real& delta) {
  if (t.is_zero()) return 1.0 - delta * delta;
  // cos(2 d t) cosh 2t - 1 = 2 sinh^2 t - 2 sin^2(d t) cosh 2t
  Real sh = sinh(t);
  Real sn = sin(delta * t);
  Real num = 2.0 * (sh * sh - sn * sn * cosh(2.0 * t));
  return exp(t) * num / (t * cosh(t) * sinh(2.0 * t));
}

IntegralRepValue ff_integral_rep(const HolePair& holes) {
  const Real delta = holes.delta();
  if (delta.is_zero()) return {Real(0), true};
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  const Real tol = epsilon_bits(bits);
  auto f = [&](const Real& t) { return integral_rep_integrand(t, delta); };
  Real integral = oscillatory_tail_quad(f, Real(0), 2.0 * abs(delta), Real(2), tol);
  Real r = 2.0 * exp(-integral);
  r.round_to(bits);
  return {r, false};
}

Real scaled_ff_prediction(const BetheState& excited) {
  PrecisionScope scope(std::max<long>(excited.bits, 128));
  return ff_closed_form(HolePair::of(excited));
}

}  // namespace spinon

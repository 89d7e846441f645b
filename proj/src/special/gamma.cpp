#include "spinon/special/gamma.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "spinon/numeric/error.hpp"
#include "spinon/numeric/quadrature.hpp"

namespace spinon {

namespace {

bool is_pole(const Complex& z) {
  if (!z.im.is_zero() || z.re.sign() > 0) return false;
  return floor(z.re) == z.re;
}

// Re z must reach this before the asymptotic series is used.
double shift_target() { return std::max(20.0, 0.12 * static_cast<double>(working_precision())); }

long shifts_needed(const Complex& z) {
  double target = shift_target();
  double re = z.re.to_double();
  return re >= target ? 0 : static_cast<long>(std::ceil(target - re));
}

}  // namespace

const Real& bernoulli(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative Bernoulli index");
  thread_local std::map<long, std::vector<Real>> cache;
  const long bits = working_precision();
  auto& table = cache[bits];
  while (static_cast<int>(table.size()) <= n) {
    const int k = static_cast<int>(table.size());
    PrecisionScope scope(bits + 32);
    Real b;
    if (k == 0) {
      b = Real(1);
    } else if (k == 1) {
      b = Real(-0.5);
    } else if (k % 2 == 1) {
      b = Real(0);
    } else {
      // B_k = (-1)^(k/2+1) 2 k! zeta(k) / (2 pi)^k
      Real zeta;
      mpfr_zeta_ui(zeta.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
      Real fact;
      mpfr_fac_ui(fact.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
      b = 2.0 * fact * zeta / pow(2.0 * const_pi(), static_cast<long>(k));
      if ((k / 2) % 2 == 0) b = -b;
    }
    b.round_to(bits);
    table.push_back(std::move(b));
  }
  return table[static_cast<std::size_t>(n)];
}

Complex log_gamma(const Complex& z) {
  if (is_pole(z)) throw Error(ErrorKind::PoleArgument, "log_gamma at non-positive integer " + z.re.str(6));
  const long bits = working_precision();
  Complex correction(0);
  Complex w = z;
  const long n = shifts_needed(z);
  {
    PrecisionScope scope(bits + 16);
    for (long k = 0; k < n; ++k) {
      correction += log(w);
      w = w + 1.0;
    }
    // Stirling series
    Complex result = (w - 0.5) * log(w) - w + log(2.0 * const_pi()) / 2.0;
    Complex inv = Complex(1) / w;
    Complex inv2 = inv * inv;
    Complex power = inv;
    const Real stop = epsilon_bits(bits + 8);
    for (int k = 1; k < 4 * bits; ++k) {
      Complex term = power * (bernoulli(2 * k) / static_cast<double>((2 * k) * (2 * k - 1)));
      result += term;
      if (abs(term) < stop * (1.0 + abs(result))) break;
      power *= inv2;
    }
    result -= correction;
    result.re.round_to(bits);
    result.im.round_to(bits);
    return result;
  }
}

Complex gamma(const Complex& z) { return exp(log_gamma(z)); }

Complex digamma(const Complex& z) {
  if (is_pole(z)) throw Error(ErrorKind::PoleArgument, "digamma at non-positive integer");
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  Complex correction(0);
  Complex w = z;
  for (long k = 0, n = shifts_needed(z); k < n; ++k) {
    correction += Complex(1) / w;
    w = w + 1.0;
  }
  Complex inv = Complex(1) / w;
  Complex inv2 = inv * inv;
  Complex result = log(w) - inv / 2.0;
  Complex power = inv2;
  const Real stop = epsilon_bits(bits + 8);
  for (int k = 1; k < 4 * bits; ++k) {
    Complex term = power * (bernoulli(2 * k) / static_cast<double>(2 * k));
    result -= term;
    if (abs(term) < stop * (1.0 + abs(result))) break;
    power *= inv2;
  }
  result -= correction;
  result.re.round_to(bits);
  result.im.round_to(bits);
  return result;
}

Complex trigamma(const Complex& z) {
  if (is_pole(z)) throw Error(ErrorKind::PoleArgument, "trigamma at non-positive integer");
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  Complex correction(0);
  Complex w = z;
  for (long k = 0, n = shifts_needed(z); k < n; ++k) {
    correction += Complex(1) / (w * w);
    w = w + 1.0;
  }
  Complex inv = Complex(1) / w;
  Complex inv2 = inv * inv;
  Complex result = inv + inv2 / 2.0;
  Complex power = inv2 * inv;
  const Real stop = epsilon_bits(bits + 8);
  for (int k = 1; k < 4 * bits; ++k) {
    Complex term = power * bernoulli(2 * k);
    result += term;
    if (abs(term) < stop * (1.0 + abs(result))) break;
    power *= inv2;
  }
  result += correction;
  result.re.round_to(bits);
  result.im.round_to(bits);
  return result;
}

Real log_gamma(const Real& x) {
  if (x.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "real log_gamma needs x > 0");
  Real r;
  mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real digamma(const Real& x) {
  Real r;
  mpfr_digamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Complex log_gamma_integral(const Complex& z) {
  if (z.re.sign() <= 0) throw Error(ErrorKind::RouteDomain, "integral log-gamma needs Re z > 0");
  const long bits = working_precision();
  PrecisionScope scope(bits + 16);
  const Complex zm1 = z - 1.0;
  // (z-1) e^-t + (e^-zt - e^-t)/(1 - e^-t), all over t
  auto integrand = [&](const Real& t) -> Complex {
    if (t.is_zero()) return Complex(0);
    Real et = exp(-t);
    Real denom = -expm1(-t);
    Complex diff;
    if (abs(t) < 0.5) {
      // e^-zt - e^-t = e^-t (e^{-(z-1)t} - 1) with a cancellation-free expm1
      Complex arg = -(zm1 * t);
      Complex em1;
      if (abs(arg) < 0.5) {
        Complex term = arg;
        em1 = term;
        const Real stop = epsilon_bits(bits + 24);
        for (int k = 2; k < 400; ++k) {
          term = term * arg / static_cast<double>(k);
          em1 += term;
          if (abs(term) < stop * abs(em1)) break;
        }
      } else {
        em1 = exp(arg) - 1.0;
      }
      diff = em1 * et;
    } else {
      diff = exp(-(z * t)) - et;
    }
    return (zm1 * et + diff / denom) / t;
  };
  Complex r = adaptive_quad_to_infinity_complex(integrand, Real(0), epsilon_bits(bits));
  r.re.round_to(bits);
  r.im.round_to(bits);
  return r;
}

}  // namespace spinon

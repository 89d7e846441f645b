#include "spinon/special/barnes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "spinon/numeric/error.hpp"
#include "spinon/numeric/quadrature.hpp"
#include "spinon/special/gamma.hpp"

namespace spinon {

namespace {

bool nonpositive_integer(const Complex& z) {
  return z.im.is_zero() && z.re.sign() <= 0 && floor(z.re) == z.re;
}

// log G(1+w) from the truncated Weierstrass product plus its large-n tail.
Complex log_g1p_product(const Complex& w) {
  const long bits = working_precision();
  const double wmag = abs(w).to_double();
  const long n_terms = std::max({30L, bits / 4, static_cast<long>(std::ceil(6.0 * wmag))});

  Complex sum(0);
  Complex lg_wn = log_gamma(w + 1.0);  // log Gamma(w + n) at n = 1
  Real lg_n(0);                        // log Gamma(n)
  Real psi = -const_euler();           // psi(n)
  Real psi1 = const_pi() * const_pi() / 6.0;  // psi'(n)
  const Complex w2h = w * w / 2.0;
  for (long n = 1; n <= n_terms; ++n) {
    sum += Complex(lg_n) - lg_wn + w * psi + w2h * psi1;
    const Real rn(static_cast<double>(n));
    lg_wn += log(w + rn);
    lg_n += log(rn);
    psi += 1.0 / rn;
    psi1 -= 1.0 / (rn * rn);
  }

  // Tail: sum_{n>N} f(n) = sum_k c_k zeta(k, N+1) with c_k from the
  // asymptotic expansions of log Gamma, psi and psi'.
  const Real a(static_cast<double>(n_terms + 1));
  const Real stop = epsilon_bits(bits + 8);
  std::vector<Complex> wpow{Complex(1)};
  Complex tail(0);
  const int k_max = static_cast<int>(4 * bits);
  for (int k = 2; k <= k_max; ++k) {
    while (static_cast<int>(wpow.size()) <= k + 1) wpow.push_back(wpow.back() * w);
    // B_{k+1}(w) - B_{k+1} = sum_{j=0}^{k} C(k+1, j) B_j w^{k+1-j}
    Complex bpoly(0);
    Real binom(1);
    for (int j = 0; j <= k; ++j) {
      if (j > 0) binom = binom * static_cast<double>(k + 2 - j) / static_cast<double>(j);
      const Real& bj = bernoulli(j);
      if (bj.is_zero()) continue;
      bpoly += wpow[static_cast<std::size_t>(k + 1 - j)] * (binom * bj);
    }
    Complex ck = bpoly / static_cast<double>(k * (k + 1));
    if (k % 2 == 1) ck = -ck;
    if (k % 2 == 0) ck -= w * (bernoulli(k) / static_cast<double>(k));
    if (k == 2) ck += w2h / 2.0;
    if (k % 2 == 1) ck += w2h * bernoulli(k - 1);
    Complex term = ck * hurwitz_zeta(k, a);
    tail += term;
    if (k > 6 && abs(term) < stop * (1.0 + abs(sum))) break;
  }

  const Real log2pi = log(2.0 * const_pi());
  return w * log2pi / 2.0 - w * (w + 1.0) / 2.0 - w2h * const_euler() + sum + tail;
}

// Integral representation of log G(1+w), valid for Re w > -1.
Complex log_g1p_integral(const Complex& w) {
  const long bits = working_precision();
  const Real stop = epsilon_bits(bits + 24);
  auto integrand = [&](const Real& t) -> Complex {
    if (t.is_zero()) return -(w * w * w) / 6.0;
    Complex x = -(w * t);
    Complex bracket;  // e^x - 1 - x - x^2/2
    if (abs(x) < 0.5) {
      Complex term = x * x * x / 6.0;
      bracket = term;
      for (int k = 4; k < 400; ++k) {
        term = term * x / static_cast<double>(k);
        bracket += term;
        if (abs(term) < stop * abs(bracket)) break;
      }
    } else {
      bracket = exp(x) - 1.0 - x - x * x / 2.0;
    }
    Real den = expm1(-t);
    return bracket * (exp(-t) / (t * den * den));
  };
  Complex integral = adaptive_quad_to_infinity_complex(integrand, Real(0), epsilon_bits(bits));
  const Real log2pi = log(2.0 * const_pi());
  return -integral + w * (log2pi - 1.0) / 2.0 - w * w * (1.0 + const_euler()) / 2.0;
}

}  // namespace

Real hurwitz_zeta(int s, const Real& a) {
  if (s < 2) throw Error(ErrorKind::InvalidArgument, "hurwitz_zeta needs s >= 2");
  const long bits = working_precision();
  // Integer offsets recur for every product-route evaluation.
  thread_local std::map<std::tuple<int, long, long>, Real> cache;
  const bool integral_a = floor(a) == a;
  auto key = std::make_tuple(s, bits, a.to_long());
  if (integral_a) {
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  PrecisionScope scope(bits + 16);
  // Direct terms until the Euler-Maclaurin remainder converges quickly.
  const double shift_to = std::max(a.to_double(), static_cast<double>(s) + 20.0 + bits / 8.0);
  Real sum(0);
  Real x = a;
  while (x.to_double() < shift_to) {
    sum += pow(x, static_cast<long>(-s));
    x += 1.0;
  }
  const Real stop = epsilon_bits(bits + 8);
  Real xs = pow(x, static_cast<long>(-s));
  sum += x * xs / static_cast<double>(s - 1) + xs / 2.0;
  // B_2j / (2j)! * s(s+1)...(s+2j-2) * x^(-s-2j+1)
  Real rising(static_cast<double>(s));
  Real fact(2);
  Real xpow = xs / x;
  Real inv_x2 = 1.0 / (x * x);
  for (int j = 1; j < 4 * bits; ++j) {
    Real term = bernoulli(2 * j) / fact * rising * xpow;
    sum += term;
    if (abs(term) < stop * abs(sum)) break;
    rising *= static_cast<double>((s + 2 * j - 1)) * static_cast<double>(s + 2 * j);
    fact *= static_cast<double>((2 * j + 1) * (2 * j + 2));
    xpow *= inv_x2;
  }
  sum.round_to(bits);
  if (integral_a) cache[key] = sum;
  return sum;
}

Complex log_barnes_g(const Complex& z, BarnesRoute route) {
  if (nonpositive_integer(z)) throw Error(ErrorKind::PoleArgument, "log G at a zero of G");
  const long bits = working_precision();
  Complex result;
  {
    PrecisionScope scope(bits + 24);
    if (route == BarnesRoute::Product) {
      result = log_g1p_product(z - 1.0);
    } else {
      // Move to Re z >= 1 with log G(z) = log G(z+1) - log Gamma(z).
      Complex shifted = z;
      Complex correction(0);
      long shifts = 0;
      while (shifted.re < 1.0) {
        if (++shifts > 100000) throw Error(ErrorKind::RouteDomain, "too many recurrence shifts");
        correction += log_gamma(shifted);
        shifted = shifted + 1.0;
      }
      result = log_g1p_integral(shifted - 1.0) - correction;
    }
  }
  result.re.round_to(bits);
  result.im.round_to(bits);
  return result;
}

Complex barnes_g(const Complex& z, BarnesRoute route) {
  if (nonpositive_integer(z)) return Complex(0);
  return exp(log_barnes_g(z, route));
}

Complex barnes_g(const Complex& z, const PrecisionContext& ctx, BarnesRoute route) {
  PrecisionScope scope(ctx.bits);
  return barnes_g(z, route);
}

}  // namespace spinon

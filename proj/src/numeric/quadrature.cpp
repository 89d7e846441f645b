#include "spinon/numeric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "spinon/numeric/error.hpp"

namespace spinon {

namespace {

// Newton iteration on P_n, seeded with the standard cosine guesses.
std::vector<std::pair<Real, Real>> compute_nodes(int n) {
  std::vector<std::pair<Real, Real>> out;
  const long bits = working_precision();
  PrecisionScope scope(bits + 32);
  const Real stop = epsilon_bits(bits + 16);
  for (int i = 1; i <= n; ++i) {
    Real x(std::cos(M_PI * (i - 0.25) / (n + 0.5)));
    Real dp;
    for (int it = 0; it < 200; ++it) {
      Real p0(1);
      Real p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) < stop) break;
    }
    Real p0(1);
    Real p1 = x;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    Real w = 2.0 / ((1.0 - x * x) * dp * dp);
    x.round_to(bits);
    w.round_to(bits);
    out.emplace_back(std::move(x), std::move(w));
  }
  return out;
}

template <class V, class F>
V gauss_rule(const F& f, const Real& a, const Real& b, const std::vector<std::pair<Real, Real>>& rule) {
  Real half = (b - a) / 2.0;
  Real mid = (a + b) / 2.0;
  V sum(0);
  for (const auto& [x, w] : rule) sum += f(mid + half * x) * w;
  return sum * half;
}

template <class V>
struct Segment {
  Real a, b;
  V value;
  Real error;
};

template <class V>
struct ByError {
  bool operator()(const Segment<V>& l, const Segment<V>& r) const { return l.error < r.error; }
};

Real mag(const Real& x) { return abs(x); }
Real mag(const Complex& z) { return max(abs(z.re), abs(z.im)); }
bool finite(const Real& x) { return x.is_finite(); }
bool finite(const Complex& z) { return z.is_finite(); }

template <class V, class F>
V adaptive_impl(const F& f, const Real& a, const Real& b, const Real& tol, const QuadOptions& opts) {
  const int order = opts.order > 0 ? opts.order : static_cast<int>(std::clamp(working_precision() / 4, 20L, 100L));
  const auto& rule = gauss_legendre(order);
  auto make = [&](const Real& lo, const Real& hi) {
    Real mid = (lo + hi) / 2.0;
    V whole = gauss_rule<V>(f, lo, hi, rule);
    V split = gauss_rule<V>(f, lo, mid, rule) + gauss_rule<V>(f, mid, hi, rule);
    Real err = mag(whole - split);
    return Segment<V>{lo, hi, std::move(split), std::move(err)};
  };

  std::priority_queue<Segment<V>, std::vector<Segment<V>>, ByError<V>> heap;
  heap.push(make(a, b));
  V total = heap.top().value;
  Real total_err = heap.top().error;
  int count = 1;
  while (true) {
    if (!finite(total)) throw Error(ErrorKind::NoConvergence, "quadrature produced a non-finite value");
    if (total_err <= tol * (1.0 + mag(total))) break;
    if (count >= opts.max_intervals) {
      throw Error(ErrorKind::NoConvergence,
                  "adaptive_quad: error estimate " + total_err.str(4) + " after " + std::to_string(count) + " intervals");
    }
    Segment<V> worst = heap.top();
    heap.pop();
    Real mid = (worst.a + worst.b) / 2.0;
    Segment<V> left = make(worst.a, mid);
    Segment<V> right = make(mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++count;
  }
  // Re-sum to drop the rounding drift of the running updates.
  V sum(0);
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace

const std::vector<std::pair<Real, Real>>& gauss_legendre(int order) {
  thread_local std::map<std::pair<int, long>, std::vector<std::pair<Real, Real>>> cache;
  auto key = std::make_pair(order, working_precision());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_nodes(order)).first;
  return it->second;
}

Real adaptive_quad(const RealFunction& f, const Real& a, const Real& b, const Real& tol, const QuadOptions& opts) {
  return adaptive_impl<Real>(f, a, b, tol, opts);
}

Complex adaptive_quad_complex(const ComplexFunction& f, const Real& a, const Real& b, const Real& tol,
                      const QuadOptions& opts) {
  return adaptive_impl<Complex>(f, a, b, tol, opts);
}

Complex adaptive_quad_to_infinity_complex(const ComplexFunction& f, const Real& a, const Real& tol, const QuadOptions& opts) {
  auto mapped = [&](const Real& u) -> Complex {
    Real one_minus = 1.0 - u;
    if (one_minus.is_zero()) return Complex(0);
    Real t = a + u / one_minus;
    return f(t) / (one_minus * one_minus);
  };
  return adaptive_impl<Complex>(mapped, Real(0), Real(1), tol, opts);
}

Real adaptive_quad_to_infinity(const RealFunction& f, const Real& a, const Real& tol, const QuadOptions& opts) {
  auto mapped = [&](const Real& u) -> Real {
    Real one_minus = 1.0 - u;
    if (one_minus.is_zero()) return Real(0);
    Real t = a + u / one_minus;
    return f(t) / (one_minus * one_minus);
  };
  return adaptive_quad(mapped, Real(0), Real(1), tol, opts);
}

Real adaptive_quad_real_line(const RealFunction& f, const Real& tol, const QuadOptions& opts) {
  auto reflected = [&](const Real& t) { return f(-t); };
  return adaptive_quad_to_infinity(f, Real(0), tol, opts) + adaptive_quad_to_infinity(reflected, Real(0), tol, opts);
}

Real cosine_integral(const Real& x) {
  if (x.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "cosine_integral needs x > 0");
  const long bits = working_precision();
  const double xd = x.to_double();
  if (xd > 0.75 * static_cast<double>(bits) + 10.0) {
    // Asymptotic series, truncated at its smallest term.
    PrecisionScope scope(bits + 16);
    Real inv2 = 1.0 / (x * x);
    Real f(1);
    Real g(1);
    Real tf(1);
    Real tg(1);
    Real last = Real(1);
    for (int k = 1; k < 10 * bits; ++k) {
      tf *= -static_cast<double>((2 * k - 1) * (2 * k)) * inv2;
      tg *= -static_cast<double>((2 * k) * (2 * k + 1)) * inv2;
      if (abs(tf) > last) break;
      last = abs(tf);
      f += tf;
      g += tg;
      if (abs(tf) < epsilon_bits(bits + 8)) break;
    }
    Real r = sin(x) * f / x - cos(x) * g / (x * x);
    r.round_to(bits);
    return r;
  }
  // Power series with enough guard bits to absorb the exp(x) cancellation.
  const long guard = static_cast<long>(xd * 1.4427 + 2.0 * std::log2(xd + 2.0)) + 32;
  PrecisionScope scope(bits + guard);
  Real xx = Real(x);
  xx.round_to(bits + guard);
  Real x2 = xx * xx;
  Real term(1);
  Real sum(0);
  const Real stop = epsilon_bits(bits + guard);
  for (long k = 1;; ++k) {
    term *= -x2 / static_cast<double>((2 * k - 1) * (2 * k));
    Real contrib = term / static_cast<double>(2 * k);
    sum += contrib;
    if (2 * k > xd && abs(contrib) < stop) break;
  }
  Real r = const_euler() + log(xx) + sum;
  r.round_to(bits);
  return r;
}

Real oscillatory_cutoff(const Real& tol) {
  Real from_tol = -log(tol) / 2.0;
  return max(Real(40), from_tol);
}

Real oscillatory_tail_quad(const RealFunction& f, const Real& a, const Real& freq, const Real& tail_c,
                           const Real& tol, const QuadOptions& opts) {
  if (freq.is_zero() && !tail_c.is_zero()) {
    throw Error(ErrorKind::DivergentTail, "zero frequency with a 1/t tail");
  }
  Real cutoff = max(oscillatory_cutoff(tol), a + 1.0);
  // Split at whole periods so each panel sees a bounded number of oscillations.
  Real body(0);
  if (!freq.is_zero()) {
    Real period = 2.0 * const_pi() / abs(freq);
    Real panel = max(period * 4.0, Real(1));
    Real lo = a;
    while (lo < cutoff) {
      Real hi = min(lo + panel, cutoff);
      body += adaptive_quad(f, lo, hi, tol, opts);
      lo = hi;
    }
  } else {
    body = adaptive_quad(f, a, cutoff, tol, opts);
  }
  if (tail_c.is_zero()) return body;
  return body - tail_c * cosine_integral(abs(freq) * cutoff);
}

}  // namespace spinon

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "spinon/numeric/complex.hpp"

namespace spinon {

using RealFunction = std::function<Real(const Real&)>;
using ComplexFunction = std::function<Complex(const Real&)>;

/// Gauss-Legendre nodes and weights on [-1, 1] at the current working precision.
/// Cached per thread for each (order, precision).
const std::vector<std::pair<Real, Real>>& gauss_legendre(int order);

struct QuadOptions {
  int max_intervals = 4000;
  int order = 0;  // 0: chosen from the working precision
};

/// Globally adaptive Gauss-Legendre quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the
/// summed estimate falls below tol * (1 + |result|). Throws NoConvergence
/// when max_intervals is exceeded.
Real adaptive_quad(const RealFunction& f, const Real& a, const Real& b, const Real& tol,
                   const QuadOptions& opts = {});

/// Complex-valued integrand; the error estimate uses max(|re|, |im|).
Complex adaptive_quad_complex(const ComplexFunction& f, const Real& a, const Real& b, const Real& tol,
                      const QuadOptions& opts = {});

/// Integral over [a, inf) through t = a + u/(1-u).
Real adaptive_quad_to_infinity(const RealFunction& f, const Real& a, const Real& tol,
                               const QuadOptions& opts = {});

Complex adaptive_quad_to_infinity_complex(const ComplexFunction& f, const Real& a, const Real& tol,
                                  const QuadOptions& opts = {});

/// Integral over the real line.
Real adaptive_quad_real_line(const RealFunction& f, const Real& tol, const QuadOptions& opts = {});

/// Cosine integral Ci(x) for x > 0.
Real cosine_integral(const Real& x);

/// Tail cut-off used by oscillatory_tail_quad: max(40, -ln(tol)/2).
Real oscillatory_cutoff(const Real& tol);

/// Integral over [a, inf) of f with f(t) ~ c cos(freq t)/t + O(exp(-2t)).
///
/// Integrates [a, T] adaptively and adds the analytic tail -c Ci(freq T).
/// Throws DivergentTail when freq is zero and c is not.
Real oscillatory_tail_quad(const RealFunction& f, const Real& a, const Real& freq, const Real& tail_c,
                           const Real& tol, const QuadOptions& opts = {});

}  // namespace spinon

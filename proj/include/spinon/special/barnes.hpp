#pragma once

#include "spinon/numeric/complex.hpp"
#include "spinon/numeric/precision.hpp"

namespace spinon {

enum class BarnesRoute { Product, Integral };

/// log G(z) for z off the non-positive integers (where G vanishes).
///
/// Product route: truncated Weierstrass product for G(1+w) with an
/// asymptotic (Hurwitz zeta) tail. Integral route: log G(1+w) by
/// quadrature for Re w > -1, other points by the recurrence G(z+1) = Gamma(z) G(z).
/// The branch is the sum of the standard log-gamma branches, so it is
/// continuous along the positive real axis from log G(1) = 0.
Complex log_barnes_g(const Complex& z, BarnesRoute route = BarnesRoute::Product);

/// G(z); exactly zero at the non-positive integers.
Complex barnes_g(const Complex& z, BarnesRoute route = BarnesRoute::Product);

/// Evaluates G(z) at ctx.bits.
Complex barnes_g(const Complex& z, const PrecisionContext& ctx, BarnesRoute route = BarnesRoute::Product);

/// Hurwitz zeta(s, a) for integer s >= 2 and a >= 1.
Real hurwitz_zeta(int s, const Real& a);

}  // namespace spinon

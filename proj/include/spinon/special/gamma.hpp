#pragma once

#include "spinon/numeric/complex.hpp"

namespace spinon {

/// Bernoulli number B_n (B_1 = -1/2) at the current working precision.
const Real& bernoulli(int n);

/// Log-gamma on the standard branch: log(Gamma(z+n)) minus principal logs of
/// z, z+1, ..., z+n-1. Agrees with the principal log of Gamma for Re z > 0.
/// Throws PoleArgument at non-positive integers.
Complex log_gamma(const Complex& z);
Complex gamma(const Complex& z);
Complex digamma(const Complex& z);
Complex trigamma(const Complex& z);

Real log_gamma(const Real& x);
Real digamma(const Real& x);

/// Integral representation of log Gamma for Re z > 0, evaluated by quadrature.
Complex log_gamma_integral(const Complex& z);

}  // namespace spinon

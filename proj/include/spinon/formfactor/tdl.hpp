#pragma once

#include "spinon/bethe/bethe.hpp"
#include "spinon/numeric/complex.hpp"
#include "spinon/special/barnes.hpp"

namespace spinon {

/// Rapidities of the two holes of a two-spinon triplet.
struct HolePair {
  Real mu1;
  Real mu2;

  Real delta() const { return mu1 - mu2; }
  static HolePair of(const BetheState& excited);
};

/// Large-M limit of q_e(lambda)/q_g(lambda) off the real axis.
/// Throws RealAxisArgument for real lambda.
Complex phi(const Complex& lambda, const HolePair& holes);

/// Large-M limit of tau_e(lambda)/tau_g(lambda): prod_a tanh(pi (lambda - mu_a) / 2).
Real chi(const Real& lambda, const HolePair& holes);

/// n^2 prod_a [(n-1/2)^2 + (lambda - mu_a)^2 / 4] / (n-1/2)^6.
Real omega_n(const Real& lambda, const HolePair& holes, int n);

/// The same factor assembled from phi at lambda + 2ni and lambda + (2n-1)i.
Real omega_n_baxter(const Real& lambda, const HolePair& holes, int n);

/// Partial product over n = 1..terms of the per-level Gamma ratios in the hole separation.
Real omega_partial_product(const Real& delta, int terms);

/// Barnes-G value of the full product over n.
Real omega_infinite_product(const Real& delta, BarnesRoute route = BarnesRoute::Product);

/// Scaled two-spinon form factor from Barnes G functions; depends only on |delta|
/// and is 0 for coincident holes.
Real ff_closed_form(const HolePair& holes, BarnesRoute route = BarnesRoute::Product);

struct IntegralRepValue {
  Real value;
  bool coincident = false;  // delta = 0: the exponent diverges, value set to 0
};

/// Scaled form factor as 2 exp(-I(delta)), I by quadrature with a cosine-integral tail.
IntegralRepValue ff_integral_rep(const HolePair& holes);

/// Integrand of I(delta), finite at t = 0.
Real integral_rep_integrand(const Real& t, const Real& delta);

/// ff_closed_form at the hole rapidities of a finite-M triplet.
Real scaled_ff_prediction(const BetheState& excited);

}  // namespace spinon

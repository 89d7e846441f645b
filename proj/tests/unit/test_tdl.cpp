#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "spinon/formfactor/tdl.hpp"
#include "spinon/numeric/error.hpp"

using namespace spinon;
using testing::rel_diff;

namespace {

HolePair pair_of(double a, double b) { return {Real(a), Real(b)}; }

}  // namespace

TEST_SUITE("tdl") {
  TEST_CASE("phi is undefined on the real axis") {
    try {
      phi(Complex(0.3), pair_of(-0.4, 0.6));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::RealAxisArgument);
    }
  }

  TEST_CASE("phi: conjugation and decay") {
    HolePair h = pair_of(-0.4, 0.6);
    Complex up = phi(Complex(0.3, 0.7), h);
    Complex down = phi(Complex(0.3, -0.7), h);
    CHECK(abs(conj(up) - down) < Real(1e-34));
    Complex far(0.0, 1e8);
    CHECK(abs(far * phi(far, h) - 1.0) < Real(1e-6));
  }

  TEST_CASE("phi: shift by i") {
    HolePair h = pair_of(-0.35, 0.9);
    for (double re : {-1.0, 0.2, 2.5}) {
      Complex l(re, 0.3);
      Complex z1 = (l - Complex(h.mu1)) / Complex(0.0, 2.0);
      Complex z2 = (l - Complex(h.mu2)) / Complex(0.0, 2.0);
      Complex lhs = phi(l, h) * phi(l + Complex(0.0, 1.0), h);
      Complex rhs = Complex(-0.25) / (z1 * z2);
      CHECK(rel_diff(lhs, rhs) < 1e-33);
    }
  }

  TEST_CASE("chi: zeros, limit and compatibility with phi") {
    HolePair h = pair_of(-0.3, 0.8);
    CHECK(abs(chi(h.mu1, h)) < Real(1e-36));
    CHECK(abs(chi(Real(40), h) - 1.0) < Real(1e-30));
    CHECK(abs(chi(Real(-40), h) - 1.0) < Real(1e-30));
    for (double x : {-2.0, 0.1, 1.7}) {
      Real lam(x);
      Complex eps(0.0, 1e-30);
      Complex p = phi(Complex(lam) + eps, h) * phi(Complex(lam) - eps, h);
      Real rat = (lam - h.mu1) * (lam - h.mu2);
      Complex prod = p * Complex(chi(lam, h) * rat);
      CHECK(abs(prod - 1.0) < Real(1e-25));
    }
  }

  TEST_CASE("omega_n: base value and agreement with the Baxter form") {
    HolePair same = pair_of(0.5, 0.5);
    CHECK(abs(omega_n(Real(0.5), same, 1) - 4.0) < Real(1e-36));
    CHECK_THROWS_AS(omega_n(Real(0), same, 0), Error);
    HolePair h = pair_of(-0.25, 0.7);
    for (int n : {1, 2, 7}) {
      for (double x : {-1.0, 0.3}) {
        CHECK(rel_diff(omega_n(Real(x), h, n), omega_n_baxter(Real(x), h, n)) < 1e-30);
      }
    }
  }

  TEST_CASE("closed form: zero, symmetry and route equivalence") {
    CHECK(ff_closed_form(pair_of(0.4, 0.4)).is_zero());
    HolePair h = pair_of(-0.2, 0.55);
    HolePair r = pair_of(0.55, -0.2);
    CHECK(rel_diff(ff_closed_form(h), ff_closed_form(r)) < 1e-34);
    CHECK(rel_diff(ff_closed_form(h), ff_closed_form(h, BarnesRoute::Integral)) < 1e-25);
    CHECK(ff_closed_form(h).sign() > 0);
  }

  TEST_CASE("closed form against reference values") {
    // mpmath barnesg at 50 digits, frozen
    CHECK(std::abs(ff_closed_form(pair_of(0.5, 0)).to_double() - 2.1612738874034125) < 1e-14);
    CHECK(std::abs(ff_closed_form(pair_of(1, 0)).to_double() - 8.6686416934525697) < 1e-13);
    CHECK(std::abs(ff_closed_form(pair_of(2, 0)).to_double() - 57.824535229293598) < 1e-12);
  }

  TEST_CASE("integral representation matches the closed form") {
    for (double d : {0.1, 0.5, 1.0}) {
      HolePair h = pair_of(d, 0);
      IntegralRepValue v = ff_integral_rep(h);
      CHECK_FALSE(v.coincident);
      CHECK(rel_diff(v.value, ff_closed_form(h)) < 1e-20);
    }
    IntegralRepValue zero = ff_integral_rep(pair_of(0.3, 0.3));
    CHECK(zero.coincident);
    CHECK(zero.value.is_zero());
  }

  TEST_CASE("integrand is continuous at the origin") {
    Real d(0.7);
    Real at0 = integral_rep_integrand(Real(0), d);
    Real near = integral_rep_integrand(Real(1e-12), d);
    CHECK(abs(at0 - near) < Real(1e-10));
  }

  TEST_CASE("partial products approach the Barnes value at rate 1/n") {
    for (double d : {0.7, 3.0}) {
      Real limit = omega_infinite_product(Real(d));
      double e100 = rel_diff(omega_partial_product(Real(d), 100), limit);
      double e400 = rel_diff(omega_partial_product(Real(d), 400), limit);
      CHECK(e400 < e100);
      CHECK(e100 / e400 == doctest::Approx(4.0).epsilon(0.1));
    }
    CHECK(std::abs(omega_infinite_product(Real(0.7)).to_double() - 0.850825029720645) < 1e-14);
  }

  TEST_CASE("finite-chain ratios approach their limits") {
    double prev_q = 1, prev_t = 1;
    for (int M : {16, 32, 64}) {
      ChainSpec chain(M);
      BetheState g = solve_ground(chain);
      int a = M / 8 + 1;
      BetheState e = solve_two_spinon_triplet(chain, a, M / 2 + 2 - a);
      PrecisionScope scope(e.bits);
      HolePair h = HolePair::of(e);
      Complex l(0.3, 0.7);
      Complex p = phi(l, h);
      double dq = rel_diff(baxter_q(e, l) / baxter_q(g, l), p);
      Complex x(0.4);
      Complex t = transfer_eigenvalue_tau(e, x) / transfer_eigenvalue_tau(g, x);
      double dt = rel_diff(t, Complex(chi(Real(0.4), h)));
      CHECK(dq < prev_q);
      CHECK(dt < prev_t);
      prev_q = dq;
      prev_t = dt;
    }
    CHECK(prev_t < 0.01);
  }

  TEST_CASE("hole pair extraction") {
    BetheState g = solve_ground(ChainSpec(8));
    CHECK_THROWS_AS(HolePair::of(g), Error);
    BetheState e = solve_two_spinon_triplet(ChainSpec(8), 1, 5);
    HolePair h = HolePair::of(e);
    CHECK(abs(h.mu1 + h.mu2) < Real(1e-30));
    CHECK(scaled_ff_prediction(e).sign() > 0);
  }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spinon/numeric/error.hpp"
#include "spinon/numeric/linalg.hpp"
#include "spinon/numeric/newton.hpp"
#include "spinon/numeric/precision.hpp"
#include "spinon/numeric/quadrature.hpp"

using namespace spinon;
using testing::cofactor_det;
using testing::rel_diff;

TEST_SUITE("numeric") {
  TEST_CASE("precision scope sets and restores the working precision") {
    const long before = working_precision();
    {
      PrecisionScope s(300);
      CHECK(working_precision() == 300);
      Real x(1);
      CHECK(x.precision() == 300);
    }
    CHECK(working_precision() == before);
  }

  TEST_CASE("precision context validation") {
    CHECK_THROWS_AS(PrecisionContext(32), Error);
    CHECK(PrecisionContext(128).doubled().bits == 256);
    CHECK(PrecisionContext::for_chain(8).bits == 128);
    CHECK(PrecisionContext::for_chain(64).bits == 768);
  }

  TEST_CASE("real arithmetic keeps digits beyond double") {
    PrecisionScope s(200);
    Real third = Real(1) / 3;
    Real back = third * 3 - 1;
    CHECK(abs(back) < epsilon_bits(195));
    CHECK(abs(sqrt(Real(2)) * sqrt(Real(2)) - 2) < epsilon_bits(195));
    CHECK(abs(exp(log(Real(7))) - 7) < epsilon_bits(190));
    // pi to 40 digits
    CHECK(abs(const_pi() - Real("3.141592653589793238462643383279502884197")) < Real(1e-39));
  }

  TEST_CASE("extended exponent range") {
    Real big = exp(Real(1e6));
    CHECK(big.is_finite());
    CHECK(abs(log(big) - 1e6) < Real(1e-25));
  }

  TEST_CASE("complex division and functions") {
    Complex a(3.0, 4.0), b(1.0, -2.0);
    Complex q = a / b;
    CHECK(rel_diff(q * b, a) < 1e-35);
    CHECK(abs(abs(a) - 5) < Real(1e-35));
    CHECK(rel_diff(exp(log(a)), a) < 1e-35);
    Complex s = sqrt(Complex(-4.0, 0.0));
    CHECK(abs(s - Complex(0.0, 2.0)) < Real(1e-35));
    CHECK(abs(conj(a).im + 4) < Real(1e-35));
    CHECK(rel_diff(sinh(a), (exp(a) - exp(-a)) / 2.0) < 1e-34);
  }

  TEST_CASE("log-scaled determinant matches cofactor expansion") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int n = 1; n <= 6; ++n) {
      ComplexMatrix a(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = Complex(u(rng), u(rng));
      Complex d = det_logscaled(a, PrecisionContext(128)).value();
      CHECK(rel_diff(d, cofactor_det(a)) < 1e-30);
    }
  }

  TEST_CASE("log-scaled determinant survives entries far outside double range") {
    ComplexMatrix a(2, 2);
    Real huge = exp(Real(5000));
    a(0, 0) = Complex(huge);
    a(0, 1) = Complex(1);
    a(1, 0) = Complex(2);
    a(1, 1) = Complex(huge);
    LogDet d = det_logscaled(a, PrecisionContext(128));
    CHECK(abs(d.log_modulus - 10000) < Real(1e-30));
    CHECK(abs(d.phase) < Real(1e-30));
  }

  TEST_CASE("singular matrix is reported") {
    RealMatrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 4;
    CHECK_THROWS_AS(det_logscaled(a, PrecisionContext(128)), Error);
  }

  TEST_CASE("inverse and lu_solve") {
    ComplexMatrix a(3, 3);
    double v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a(r, c) = Complex(v[r][c], 0.1 * (r - c));
    ComplexMatrix p = multiply(a, inverse(a));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(abs(p(r, c) - Complex(r == c ? 1.0 : 0.0)) < Real(1e-35));
    std::vector<Complex> b = {Complex(1), Complex(2), Complex(3)};
    auto x = lu_solve(a, b);
    for (int r = 0; r < 3; ++r) {
      Complex s(0);
      for (int c = 0; c < 3; ++c) s += a(r, c) * x[c];
      CHECK(abs(s - b[r]) < Real(1e-35));
    }
  }

  TEST_CASE("newton solves a coupled system") {
    using V = std::vector<Real>;
    auto F = [](const V& x) { return V{x[0] * x[0] + x[1] * x[1] - 4, x[0] - x[1]}; };
    auto J = [](const V& x) {
      RealMatrix m(2, 2);
      m(0, 0) = 2 * x[0];
      m(0, 1) = 2 * x[1];
      m(1, 0) = 1;
      m(1, 1) = -1;
      return m;
    };
    NewtonReport rep;
    V x = newton_solve<Real>(F, J, V{Real(1), Real(0.5)}, epsilon_bits(120), 60, &rep);
    CHECK(abs(x[0] - sqrt(Real(2))) < Real(1e-34));
    CHECK(rep.iterations > 0);
  }

  TEST_CASE("newton reports a singular jacobian") {
    using V = std::vector<Real>;
    auto F = [](const V& x) { return V{x[0] * x[0] + 1}; };
    auto J = [](const V&) {
      RealMatrix m(1, 1);
      m(0, 0) = 0;
      return m;
    };
    try {
      newton_solve<Real>(F, J, V{Real(0)}, Real(1e-20), 10);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularJacobian);
    }
  }

  TEST_CASE("adaptive quadrature on finite and infinite ranges") {
    Real tol = epsilon_bits(120);
    Real a = adaptive_quad([](const Real& x) { return x * x; }, Real(0), Real(1), tol);
    CHECK(abs(a - Real(1) / 3) < Real(1e-33));
    Real b = adaptive_quad_to_infinity([](const Real& t) { return exp(-t); }, Real(0), tol);
    CHECK(abs(b - 1) < Real(1e-33));
    Real c = adaptive_quad_real_line([](const Real& x) { return 1 / (1 + x * x); }, tol);
    CHECK(abs(c - const_pi()) < Real(1e-30));
  }

  TEST_CASE("cosine integral reference values") {
    // mpmath ci(2), ci(200)
    CHECK(abs(cosine_integral(Real(2)) - Real("0.42298082877486499569")) < Real(1e-19));
    CHECK(abs(cosine_integral(Real(200)) - Real("-0.0043784460930278")) < Real(1e-16));
  }

  TEST_CASE("oscillatory tail: int_1^inf cos t / t = -Ci(1)") {
    Real tol = epsilon_bits(110);
    Real v = oscillatory_tail_quad([](const Real& t) { return cos(t) / t; }, Real(1), Real(1), Real(1), tol);
    CHECK(abs(v + cosine_integral(Real(1))) < Real(1e-28));
  }

  TEST_CASE("oscillatory tail with zero frequency diverges") {
    try {
      oscillatory_tail_quad([](const Real& t) { return 1 / t; }, Real(1), Real(0), Real(1), Real(1e-20));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DivergentTail);
    }
  }
}

#pragma once

#include <string>
#include <utility>

#include "spinon/numeric/real.hpp"

namespace spinon {

/// Complex number with MPFR real and imaginary parts.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(double r) : re(r), im(0) {}       // NOLINT(google-explicit-constructor)
  Complex(int r) : re(r), im(0) {}          // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i) : re(r), im(i) {}

  static Complex I() { return Complex(0.0, 1.0); }

  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& z);
  Complex& operator-=(const Complex& z);
  Complex& operator*=(const Complex& z);
  Complex& operator/=(const Complex& z);
  Complex& operator*=(const Real& r);
  Complex& operator/=(const Real& r);

  std::string str(int digits = 20) const;
};

Complex operator-(const Complex& a);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator*(const Complex& a, double b);
Complex operator*(double a, const Complex& b);
Complex operator/(const Complex& a, double b);
Complex operator+(const Complex& a, double b);
Complex operator-(const Complex& a, double b);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
Complex tanh(const Complex& z);
Complex pow(const Complex& z, long n);
Complex polar(const Real& modulus, const Real& phase);

/// Real-axis helper: multiply by i.
inline Complex times_i(const Complex& z) { return Complex(-z.im, z.re); }

}  // namespace spinon

#include "spinon/numeric/complex.hpp"

namespace spinon {

Complex& Complex::operator+=(const Complex& z) {
  re += z.re;
  im += z.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& z) {
  re -= z.re;
  im -= z.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& z) {
  *this = *this * z;
  return *this;
}

Complex& Complex::operator/=(const Complex& z) {
  *this = *this / z;
  return *this;
}

Complex& Complex::operator*=(const Real& r) {
  re *= r;
  im *= r;
  return *this;
}

Complex& Complex::operator/=(const Real& r) {
  re /= r;
  im /= r;
  return *this;
}

std::string Complex::str(int digits) const {
  return "(" + re.str(digits) + ", " + im.str(digits) + ")";
}

Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Smith's algorithm keeps intermediate magnitudes near those of the operands.
Complex operator/(const Complex& a, const Complex& b) {
  if (abs(b.re) >= abs(b.im)) {
    Real r = b.im / b.re;
    Real d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  Real r = b.re / b.im;
  Real d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return {b.re * a, b.im * a}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator*(const Complex& a, double b) { return {a.re * b, a.im * b}; }
Complex operator*(double a, const Complex& b) { return {b.re * a, b.im * a}; }
Complex operator/(const Complex& a, double b) { return {a.re / b, a.im / b}; }
Complex operator+(const Complex& a, double b) { return {a.re + b, a.im}; }
Complex operator-(const Complex& a, double b) { return {a.re - b, a.im}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  Real s;
  Real c;
  mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex();
  Real m = abs(z);
  Real a = sqrt((m + abs(z.re)) / 2.0);
  if (z.re.sign() >= 0) return {a, z.im / (a * 2.0)};
  Real b = z.im.sign() < 0 ? -a : a;
  return {abs(z.im) / (a * 2.0), b};
}

Complex sin(const Complex& z) { return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)}; }
Complex cos(const Complex& z) { return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))}; }
Complex sinh(const Complex& z) { return {sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)}; }
Complex cosh(const Complex& z) { return {cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)}; }
Complex tanh(const Complex& z) { return sinh(z) / cosh(z); }

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex result(1);
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Complex polar(const Real& modulus, const Real& phase) {
  return {modulus * cos(phase), modulus * sin(phase)};
}

}  // namespace spinon

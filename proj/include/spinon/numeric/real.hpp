#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace spinon {

/// Mantissa precision (bits) given to values created on the calling thread.
long working_precision() noexcept;

/// Sets the thread's working precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

/// Owning wrapper around an MPFR floating-point value.
///
/// New values (including arithmetic results) are created at the thread's
/// working precision; copies keep the precision of their source. MPFR's
/// exponent range is widened on each thread so magnitudes such as
/// exp(+-10^6) are representable.
class Real {
 public:
  Real();
  Real(double x);  // NOLINT(google-explicit-constructor)
  Real(int x);     // NOLINT(google-explicit-constructor)
  Real(long x);    // NOLINT(google-explicit-constructor)
  explicit Real(std::string_view decimal);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr raw() noexcept { return value_; }
  mpfr_srcptr raw() const noexcept { return value_; }
  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(value_)); }

  /// Rounds to the given precision in place.
  void round_to(long bits);

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  explicit operator double() const noexcept { return to_double(); }
  long to_long() const noexcept { return mpfr_get_si(value_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits (0: enough for the precision).
  std::string str(int digits = 0) const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  /// Binary exponent e with 0.5 <= |x| 2^-e < 1; meaningless for zero.
  long exponent() const noexcept { return mpfr_get_exp(value_); }

  Real& operator+=(const Real& r);
  Real& operator-=(const Real& r);
  Real& operator*=(const Real& r);
  Real& operator/=(const Real& r);
  Real& operator+=(double r);
  Real& operator-=(double r);
  Real& operator*=(double r);
  Real& operator/=(double r);

 private:
  mpfr_t value_;
};

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);
Real operator*(const Real& a, double b);
Real operator/(const Real& a, double b);
Real operator+(double a, const Real& b);
Real operator-(double a, const Real& b);
Real operator*(double a, const Real& b);
Real operator/(double a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
inline Real operator+(const Real& a, int b) { return a + static_cast<double>(b); }
inline Real operator-(const Real& a, int b) { return a - static_cast<double>(b); }
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator+(int a, const Real& b) { return static_cast<double>(a) + b; }
inline Real operator-(int a, const Real& b) { return static_cast<double>(a) - b; }
inline Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
inline Real operator/(int a, const Real& b) { return static_cast<double>(a) / b; }

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
bool operator==(const Real& a, double b);
std::partial_ordering operator<=>(const Real& a, double b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real round(const Real& x);
/// x * 2^e
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real const_pi();
Real const_euler();
Real const_log2();

/// 2^(-bits) at the current working precision.
Real epsilon_bits(long bits);

}  // namespace spinon

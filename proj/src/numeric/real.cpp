#include "spinon/numeric/real.hpp"

#include <cmath>
#include <memory>

#include "spinon/numeric/error.hpp"

namespace spinon {

namespace {

thread_local long g_working_bits = 128;

// MPFR keeps the exponent range per thread.
struct ExponentRange {
  ExponentRange() {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
  }
};

mpfr_prec_t clamp_prec(long bits) {
  return static_cast<mpfr_prec_t>(bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits);
}

}  // namespace

long working_precision() noexcept { return g_working_bits; }

PrecisionScope::PrecisionScope(long bits) : saved_(g_working_bits) {
  if (bits < 2) throw Error(ErrorKind::InvalidArgument, "precision must be at least 2 bits");
  g_working_bits = bits;
}

PrecisionScope::~PrecisionScope() { g_working_bits = saved_; }

Real::Real() {
  thread_local ExponentRange range;
  (void)range;
  mpfr_init2(value_, clamp_prec(g_working_bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(double x) : Real() { mpfr_set_d(value_, x, MPFR_RNDN); }
Real::Real(int x) : Real() { mpfr_set_si(value_, x, MPFR_RNDN); }
Real::Real(long x) : Real() { mpfr_set_si(value_, x, MPFR_RNDN); }

Real::Real(std::string_view decimal) : Real() {
  std::string s(decimal);
  if (mpfr_set_str(value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse real number '" + s + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

void Real::round_to(long bits) { mpfr_prec_round(value_, clamp_prec(bits), MPFR_RNDN); }

std::string Real::str(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
  std::unique_ptr<char[]> buf;
  int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
  buf.reset(new char[n + 1]);
  mpfr_snprintf(buf.get(), n + 1, "%.*Re", digits - 1, value_);
  return std::string(buf.get());
}

Real& Real::operator+=(const Real& r) { mpfr_add(value_, value_, r.value_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& r) { mpfr_sub(value_, value_, r.value_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& r) { mpfr_mul(value_, value_, r.value_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& r) { mpfr_div(value_, value_, r.value_, MPFR_RNDN); return *this; }
Real& Real::operator+=(double r) { mpfr_add_d(value_, value_, r, MPFR_RNDN); return *this; }
Real& Real::operator-=(double r) { mpfr_sub_d(value_, value_, r, MPFR_RNDN); return *this; }
Real& Real::operator*=(double r) { mpfr_mul_d(value_, value_, r, MPFR_RNDN); return *this; }
Real& Real::operator/=(double r) { mpfr_div_d(value_, value_, r, MPFR_RNDN); return *this; }

#define SPINON_BINOP(op, fn)                                                                     \
  Real operator op(const Real& a, const Real& b) { Real r; fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
SPINON_BINOP(+, mpfr_add)
SPINON_BINOP(-, mpfr_sub)
SPINON_BINOP(*, mpfr_mul)
SPINON_BINOP(/, mpfr_div)
#undef SPINON_BINOP

Real operator-(const Real& a) { Real r; mpfr_neg(r.raw(), a.raw(), MPFR_RNDN); return r; }
Real operator+(const Real& a, double b) { Real r; mpfr_add_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator-(const Real& a, double b) { Real r; mpfr_sub_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator*(const Real& a, double b) { Real r; mpfr_mul_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator/(const Real& a, double b) { Real r; mpfr_div_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator+(double a, const Real& b) { return b + a; }
Real operator-(double a, const Real& b) { Real r; mpfr_d_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
Real operator*(double a, const Real& b) { return b * a; }
Real operator/(double a, const Real& b) { Real r; mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
Real operator*(const Real& a, long b) { Real r; mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) { Real r; mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Real& a, double b) { return !a.is_nan() && mpfr_cmp_d(a.raw(), b) == 0; }

std::partial_ordering operator<=>(const Real& a, double b) {
  if (a.is_nan() || std::isnan(b)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.raw(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define SPINON_UNARY(name, fn)                                   \
  Real name(const Real& x) { Real r; fn(r.raw(), x.raw(), MPFR_RNDN); return r; }
SPINON_UNARY(abs, mpfr_abs)
SPINON_UNARY(sqrt, mpfr_sqrt)
SPINON_UNARY(exp, mpfr_exp)
SPINON_UNARY(expm1, mpfr_expm1)
SPINON_UNARY(log, mpfr_log)
SPINON_UNARY(log1p, mpfr_log1p)
SPINON_UNARY(sin, mpfr_sin)
SPINON_UNARY(cos, mpfr_cos)
SPINON_UNARY(tan, mpfr_tan)
SPINON_UNARY(atan, mpfr_atan)
SPINON_UNARY(sinh, mpfr_sinh)
SPINON_UNARY(cosh, mpfr_cosh)
SPINON_UNARY(tanh, mpfr_tanh)
#undef SPINON_UNARY

Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN); return r; }
Real hypot(const Real& x, const Real& y) { Real r; mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN); return r; }
Real pow(const Real& x, long n) { Real r; mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN); return r; }
Real pow(const Real& x, const Real& y) { Real r; mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN); return r; }
Real floor(const Real& x) { Real r; mpfr_floor(r.raw(), x.raw()); return r; }
Real round(const Real& x) { Real r; mpfr_round(r.raw(), x.raw()); return r; }
Real ldexp(const Real& x, long e) { Real r; mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN); return r; }
Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real const_pi() { Real r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
Real const_euler() { Real r; mpfr_const_euler(r.raw(), MPFR_RNDN); return r; }
Real const_log2() { Real r; mpfr_const_log2(r.raw(), MPFR_RNDN); return r; }

Real epsilon_bits(long bits) { Real r(1); mpfr_mul_2si(r.raw(), r.raw(), -bits, MPFR_RNDN); return r; }

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DivergentTail: return "DivergentTail";
    case ErrorKind::PoleArgument: return "PoleArgument";
    case ErrorKind::RouteDomain: return "RouteDomain";
    case ErrorKind::RealAxisArgument: return "RealAxisArgument";
    case ErrorKind::HoleBracketFailure: return "HoleBracketFailure";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::DegenerateAmbiguity: return "DegenerateAmbiguity";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace spinon

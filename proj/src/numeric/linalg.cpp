#include "spinon/numeric/linalg.hpp"

namespace spinon {

Real wrap_phase(const Real& angle) {
  Real two_pi = const_pi() * 2.0;
  Real w = angle - two_pi * floor(angle / two_pi);
  if (w > const_pi()) w -= two_pi;
  return w;
}

Complex LogDet::value() const { return polar(exp(log_modulus), phase); }

LogDet LogDet::operator*(const LogDet& other) const {
  return {log_modulus + other.log_modulus, wrap_phase(phase + other.phase)};
}

LogDet LogDet::operator/(const LogDet& other) const {
  return {log_modulus - other.log_modulus, wrap_phase(phase - other.phase)};
}

LogDet to_logdet(const Complex& z) {
  if (z.is_zero()) throw Error(ErrorKind::SingularMatrix, "log of zero");
  return {log(abs(z)), arg(z)};
}

LogDet det_logscaled(const ComplexMatrix& input, const PrecisionContext& ctx) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw Error(ErrorKind::InvalidArgument, "det_logscaled: matrix not square");
  PrecisionScope scope(ctx.bits);
  if (n == 0) return {Real(0), Real(0)};

  ComplexMatrix a(n, n);
  Real log_scale(0);
  for (std::size_t r = 0; r < n; ++r) {
    Real row_max(0);
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = input(r, c);
      a(r, c).re.round_to(ctx.bits);
      a(r, c).im.round_to(ctx.bits);
      if (!a(r, c).is_finite()) throw Error(ErrorKind::InvalidArgument, "det_logscaled: non-finite entry");
      row_max = max(row_max, max(abs(a(r, c).re), abs(a(r, c).im)));
    }
    if (row_max.is_zero()) throw Error(ErrorKind::SingularMatrix, "zero row");
    for (std::size_t c = 0; c < n; ++c) a(r, c) /= row_max;
    log_scale += log(row_max);
  }

  const Real threshold = epsilon_bits(ctx.bits - 8);
  Real log_mod = log_scale;
  Complex phase_acc(1);
  bool odd_swaps = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      Real v = abs(a(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best < threshold) {
      throw Error(ErrorKind::SingularMatrix, "pivot " + best.str(6) + " below threshold at column " + std::to_string(k));
    }
    if (p != k) {
      a.swap_rows(p, k);
      odd_swaps = !odd_swaps;
    }
    const Complex pivot = a(k, k);
    log_mod += log(best);
    phase_acc *= pivot / best;
    phase_acc /= abs(phase_acc);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k).is_zero()) continue;
      Complex f = a(r, k) / pivot;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  if (odd_swaps) phase_acc = -phase_acc;
  return {log_mod, arg(phase_acc)};
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Complex(a(r, c));
  return out;
}

LogDet det_logscaled(const RealMatrix& a, const PrecisionContext& ctx) { return det_logscaled(to_complex(a), ctx); }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "multiply: shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Complex s;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix inverse(const ComplexMatrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw Error(ErrorKind::InvalidArgument, "inverse: matrix not square");
  ComplexMatrix a = input;
  ComplexMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = Complex(r == c ? 1 : 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      Real v = abs(a(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best.is_zero()) throw Error(ErrorKind::SingularMatrix, "inverse: zero pivot");
    a.swap_rows(p, k);
    inv.swap_rows(p, k);
    Complex piv_inv = Complex(1) / a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) *= piv_inv;
      inv(k, c) *= piv_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || a(r, k).is_zero()) continue;
      Complex f = a(r, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

}  // namespace spinon

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spinon/numeric/complex.hpp"
#include "spinon/numeric/error.hpp"
#include "spinon/numeric/precision.hpp"

namespace spinon {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<Real>;

/// Determinant stored as log|det| and arg(det).
struct LogDet {
  Real log_modulus;
  Real phase;  // in (-pi, pi]

  Complex value() const;
  LogDet operator*(const LogDet& other) const;
  LogDet operator/(const LogDet& other) const;
};

/// Wraps an angle into (-pi, pi].
Real wrap_phase(const Real& angle);

/// Log of a nonzero complex number as a LogDet.
LogDet to_logdet(const Complex& z);

/// Determinant by row-equilibrated LU with partial pivoting at ctx.bits.
///
/// Each row is divided by its largest entry before elimination and the
/// scales are accumulated in log form, so magnitudes beyond the double
/// range are harmless. Throws SingularMatrix when a pivot of the
/// equilibrated matrix drops below 2^(8-bits).
LogDet det_logscaled(const ComplexMatrix& a, const PrecisionContext& ctx);
LogDet det_logscaled(const RealMatrix& a, const PrecisionContext& ctx);

ComplexMatrix to_complex(const RealMatrix& a);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

inline double magnitude(double x) { return x < 0 ? -x : x; }
inline Real magnitude(const Real& x) { return abs(x); }
inline Real magnitude(const Complex& z) { return abs(z); }
inline bool is_zero_value(double x) { return x == 0.0; }
inline bool is_zero_value(const Real& x) { return x.is_zero(); }
inline bool is_zero_value(const Complex& z) { return z.is_zero(); }

/// Solves A x = b by LU with partial pivoting at the current working precision.
template <class T>
std::vector<T> lu_solve(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorKind::InvalidArgument, "lu_solve: shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    auto best = magnitude(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      auto v = magnitude(a(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (is_zero_value(best)) throw Error(ErrorKind::SingularMatrix, "lu_solve: zero pivot");
    if (p != k) {
      a.swap_rows(p, k);
      std::swap(b[p], b[k]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      T f = a(r, k) / a(k, k);
      if (is_zero_value(f)) continue;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * x[c];
    x[i] = s / a(i, i);
  }
  return x;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
ComplexMatrix inverse(const ComplexMatrix& a);

}  // namespace spinon

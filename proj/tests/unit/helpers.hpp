#pragma once

#include <vector>

#include "spinon/numeric/complex.hpp"
#include "spinon/numeric/linalg.hpp"

namespace testing {

// Cofactor expansion along the first row; exponential cost, only for n <= 6.
inline spinon::Complex cofactor_det(const spinon::ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  spinon::Complex d(0);
  for (std::size_t c = 0; c < n; ++c) {
    spinon::ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0, kk = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, kk++) = a(r, k);
      }
    }
    spinon::Complex term = a(0, c) * cofactor_det(minor);
    if (c % 2) d -= term;
    else d += term;
  }
  return d;
}

inline double rel_diff(const spinon::Complex& a, const spinon::Complex& b) {
  return (spinon::abs(a - b) / spinon::abs(b)).to_double();
}

inline double rel_diff(const spinon::Real& a, const spinon::Real& b) {
  return (spinon::abs(a - b) / spinon::abs(b)).to_double();
}

}  // namespace testing

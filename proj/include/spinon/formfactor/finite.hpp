#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinon/bethe/bethe.hpp"
#include "spinon/numeric/linalg.hpp"

namespace spinon {

enum class FormFactorRoute { Determinant, Cauchy, SinhProduct };

std::string to_string(FormFactorRoute route);
FormFactorRoute route_from_string(const std::string& name);

struct FormFactorResult {
  int M = 0;
  std::pair<int, int> hole_slots{0, 0};
  std::vector<Real> hole_rapidities;
  Real value;  // |F_z|^2
  FormFactorRoute route = FormFactorRoute::Determinant;
  long bits_used = 0;
  // Component log-magnitudes plus "phase_residual" (distance of the assembled
  // phase from 0 or pi) and "escalations".
  std::map<std::string, double> diagnostics;

  nlohmann::json to_json() const;
};

/// t(x) = i / (x (x + i)) and K(x) = t(x) + t(-x) = 2i / (x^2 + 1).
Complex kernel_t(const Complex& x);
Complex kernel_k(const Complex& x);

/// Slavnov matrix of an on-shell state against arbitrary parameters:
/// S_jk = a(p_k) t(p_k - lambda_j) - t(lambda_j - p_k).
ComplexMatrix slavnov_matrix(const BetheState& on_shell, const std::vector<Complex>& params);

/// Gaudin matrix a'(lambda_j) delta_jk - K(lambda_j - lambda_k).
ComplexMatrix gaudin_matrix(const BetheState& state);

/// Slavnov rows of `state` extended by the rows a(p_k)(p_k + i)^r - p_k^r, r = 0, 1.
ComplexMatrix foda_wheeler_matrix(const BetheState& state, const std::vector<Complex>& params);

/// Exact |<e|sigma^z|g>|^2 / (<g|g><e|e>) from the Slavnov, extended Slavnov and
/// Gaudin determinants. Raises the precision (re-solving both states) while the
/// assembled phase is farther than 2^(-bits/4) from the real axis; throws
/// PrecisionExhausted once ctx.max_escalations doublings are used up.
FormFactorResult ff_determinant(const BetheState& g, const BetheState& e);

/// Cauchy-matrix form with the hole-corrected excited block. Asymptotic in M.
FormFactorResult ff_cauchy(const BetheState& g, const BetheState& e);

/// Double sinh/rational products with the 2x2 hole block reduced to its
/// large-M value. Asymptotic in M.
FormFactorResult ff_sinh_product(const BetheState& g, const BetheState& e);

FormFactorResult ff_route(const BetheState& g, const BetheState& e, FormFactorRoute route);

/// Matrix pi / sinh(pi (cols_k - rows_j)).
ComplexMatrix cauchy_sinh_matrix(const std::vector<Complex>& rows, const std::vector<Complex>& cols);

/// Closed form of det cauchy_sinh_matrix(x, y):
/// pi^n prod_{j<k} sinh pi(x_j - x_k) sinh pi(y_k - y_j) / prod_{j,k} sinh pi(y_k - x_j).
LogDet cauchy_sinh_det(const std::vector<Complex>& rows, const std::vector<Complex>& cols);

/// Closed form for the (n+1)-square matrix with rows (excited roots, h1, h2) and
/// columns (ground roots, i/2); ground has n roots, excited n-1.
LogDet big_cauchy_det(const std::vector<Real>& ground, const std::vector<Real>& excited, const Real& h1,
                      const Real& h2);

/// Closed form for the n-square matrix with rows (ground roots) and columns (excited roots, i/2).
LogDet small_cauchy_det(const std::vector<Real>& ground, const std::vector<Real>& excited);

/// Hole-corrected excited matrix of the Cauchy form (n+1 square).
ComplexMatrix excited_cauchy_matrix(const BetheState& g, const BetheState& e);

struct TwoRowReduction {
  Complex det_full;     // det(R_e C^-1)
  Complex predicted;    // (mu_h2 - mu_h1) / (a'_e(mu_h1) a'_e(mu_h2))
  Real relative_gap;    // |det_full - predicted| / |predicted|
  Real block_residual;  // max |P_jk - delta_jk| over the leading (n-1) block
};

/// Reduces the excited Cauchy matrix against the big Cauchy matrix.
TwoRowReduction two_row_reduction(const BetheState& g, const BetheState& e);

}  // namespace spinon

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinon/numeric/error.hpp"
#include "spinon/numeric/linalg.hpp"

namespace spinon {

struct NewtonReport {
  int iterations = 0;
  double residual = 0;  // max-norm of F at the returned point
};

template <class T>
T residual_norm(const std::vector<T>& v) {
  T best(0);
  for (const auto& x : v) {
    T m = magnitude(x);
    if (m > best) best = m;
  }
  return best;
}

/// Damped Newton iteration for F(x) = 0.
///
/// A full step is halved (up to 30 times) while it fails to reduce the
/// max-norm residual. Stops once ||F||_inf <= tol.
template <class T>
std::vector<T> newton_solve(const std::function<std::vector<T>(const std::vector<T>&)>& F,
                            const std::function<Matrix<T>(const std::vector<T>&)>& J, std::vector<T> x,
                            const T& tol, int max_iter, NewtonReport* report = nullptr) {
  std::vector<T> fx = F(x);
  T res = residual_norm(fx);
  int it = 0;
  for (; it < max_iter && res > tol; ++it) {
    std::vector<T> neg(fx.size());
    for (std::size_t i = 0; i < fx.size(); ++i) neg[i] = -fx[i];
    std::vector<T> step;
    try {
      step = lu_solve(J(x), std::move(neg));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SingularMatrix) throw Error(ErrorKind::SingularJacobian, e.what());
      throw;
    }
    T scale(1);
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving) {
      std::vector<T> trial = x;
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] += scale * step[i];
      std::vector<T> ft = F(trial);
      T rt = residual_norm(ft);
      if (rt < res || halving == 30) {
        accepted = rt < res;
        x = std::move(trial);
        fx = std::move(ft);
        res = rt;
        break;
      }
      scale = scale * 0.5;
    }
    if (!accepted && res > tol) {
      // Stagnation at the rounding floor still counts as failure above tol.
      ++it;
      break;
    }
  }
  if (report) {
    report->iterations = it;
    report->residual = static_cast<double>(res);
  }
  if (!(res <= tol)) {
    throw Error(ErrorKind::NoConvergence, "newton_solve: residual " + std::to_string(static_cast<double>(res)) +
                                              " after " + std::to_string(it) + " iterations");
  }
  return x;
}

}  // namespace spinon

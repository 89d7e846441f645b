#pragma once

#include <algorithm>

#include "spinon/numeric/error.hpp"

namespace spinon {

/// Working precision and acceptance policy for high-precision evaluations.
struct PrecisionContext {
  long bits = 128;
  double rel_tol = 1e-20;
  int max_escalations = 3;

  PrecisionContext() = default;
  PrecisionContext(long b, double tol = 1e-20, int esc = 3) : bits(b), rel_tol(tol), max_escalations(esc) {
    validate();
  }

  void validate() const {
    if (bits < 64) throw Error(ErrorKind::InvalidArgument, "precision below 64 bits");
    if (!(rel_tol > 0)) throw Error(ErrorKind::InvalidArgument, "rel_tol must be positive");
    if (max_escalations < 0) throw Error(ErrorKind::InvalidArgument, "negative escalation count");
  }

  PrecisionContext doubled() const { return PrecisionContext(bits * 2, rel_tol, max_escalations); }

  /// Default context for finite-size determinant work on a chain of M sites.
  static PrecisionContext for_chain(int M) { return PrecisionContext(std::max<long>(128, 12L * M)); }
};

}  // namespace spinon

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinon {

enum class ErrorKind {
  SingularMatrix,
  SingularJacobian,
  NoConvergence,
  DivergentTail,
  PoleArgument,
  RouteDomain,
  RealAxisArgument,
  HoleBracketFailure,
  PrecisionExhausted,
  SizeLimit,
  NoMatch,
  DegenerateAmbiguity,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Numerical failure carrying a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spinon

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinon/numeric/complex.hpp"
#include "spinon/numeric/precision.hpp"

namespace spinon {

/// Periodic chain of M sites with the precision used for its Bethe states.
struct ChainSpec {
  int M = 8;
  PrecisionContext ctx;

  ChainSpec() = default;
  explicit ChainSpec(int m) : M(m), ctx(PrecisionContext::for_chain(m)) { validate(); }
  ChainSpec(int m, PrecisionContext c) : M(m), ctx(c) { validate(); }
  void validate() const;
};

enum class StateKind { Ground, TwoSpinonTriplet };

std::string to_string(StateKind kind);

/// Bethe quantum numbers, stored doubled so half-integers stay exact.
struct QuantumNumbers {
  std::vector<int> twice;

  std::size_t size() const { return twice.size(); }
  double value(std::size_t j) const { return twice[j] / 2.0; }
  void validate() const;

  /// I_j = j - (N+1)/2, j = 1..N.
  static QuantumNumbers ground(int N);
  /// The M/2+1 values -M/4, ..., M/4 available to a state with M/2-1 roots.
  static QuantumNumbers triplet_slots(int M);
};

struct BetheState {
  ChainSpec chain;
  StateKind kind = StateKind::Ground;
  std::vector<Real> roots;  // sorted ascending
  QuantumNumbers qnums;
  std::vector<Real> holes;          // empty for the ground state
  std::pair<int, int> slots{0, 0};  // 1-based removed slots for triplets
  double residual = 0;              // max_j |1 + a(lambda_j)|
  long bits = 0;                    // precision of the stored roots

  int M() const { return chain.M; }
  std::size_t N() const { return roots.size(); }
};

/// Ground state: M/2 real roots with consecutive quantum numbers.
BetheState solve_ground(const ChainSpec& chain);

/// Two-spinon triplet with quantum-number slots a < b (1-based, out of M/2+1) left empty.
BetheState solve_two_spinon_triplet(const ChainSpec& chain, int a, int b);

/// Re-solves the same state at a new precision, seeded by the current roots.
BetheState refine(const BetheState& state, long bits);

/// Real counting function Z(x) = [2M atan 2x - sum_k 2 atan(x - lambda_k)] / (2 pi).
/// Roots sit at Z = I_j; holes at the unused admissible values.
Real counting_z(const BetheState& state, const Real& x);
Real counting_z_prime(const BetheState& state, const Real& x);

/// Exponential counting function a(lambda) = ((lambda - i/2)/(lambda + i/2))^M q(lambda + i)/q(lambda - i).
Complex counting_a(const BetheState& state, const Complex& lambda);
/// Analytic derivative of counting_a.
Complex counting_a_prime(const BetheState& state, const Complex& lambda);

/// Baxter polynomial q(lambda) = prod_j (lambda - lambda_j) and the sum of principal logs.
Complex baxter_q(const BetheState& state, const Complex& lambda);
Complex log_baxter_q(const BetheState& state, const Complex& lambda);

/// Transfer-matrix eigenvalue (a(mu) + 1) q(mu - i) / q(mu); at a root the
/// removable singularity is evaluated as N'(mu)/q'(mu) with
/// N(mu) = ((mu - i/2)/(mu + i/2))^M q(mu + i) + q(mu - i).
Complex transfer_eigenvalue_tau(const BetheState& state, const Complex& mu);

/// max_j |1 + a(lambda_j)|
Real root_residual(const BetheState& state);

/// Number of real zeros of 1 + a, counted as sign changes of sin(pi (Z - (N+1)/2))
/// on a uniform grid over [-width, width] with `points` samples.
int real_zero_count(const BetheState& state, double width, int points);

/// E = -sum_j 2/(lambda_j^2 + 1/4) for the Pauli-matrix Hamiltonian.
Real energy(const BetheState& state);
/// P = sum_j (pi - 2 atan 2 lambda_j) mod 2 pi.
Real momentum(const BetheState& state);

/// Spinon dispersion pi / (2 cosh pi mu) and momentum pi/2 - atan(sinh pi mu).
Real epsilon(const Real& mu);
Real momentum_p(const Real& mu);

/// Two-spinon excitation energy above the ground state in the Pauli-matrix
/// normalisation: 4 (epsilon(mu1) + epsilon(mu2)).
Real two_spinon_energy(const Real& mu1, const Real& mu2);

/// 1 / (2 cosh pi lambda)
Real ground_density(const Real& lambda);
/// (1/2pi) Re[psi(1 + i lambda/2) - psi(1/2 + i lambda/2)]
Real hole_density(const Real& lambda);
/// pi / sinh(pi (mu - lambda)); PoleArgument when mu - lambda is in iZ.
Complex rho_g_kernel(const Complex& lambda, const Complex& mu);
/// rho_g_kernel(lambda, i/2) = -i pi / cosh(pi lambda)
Complex rho_g_kernel_half(const Complex& lambda);

nlohmann::json to_json(const BetheState& state);
BetheState state_from_json(const nlohmann::json& j);

}  // namespace spinon

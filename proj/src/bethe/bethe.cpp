#include "spinon/bethe/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "spinon/numeric/error.hpp"
#include "spinon/numeric/linalg.hpp"
#include "spinon/numeric/newton.hpp"
#include "spinon/special/gamma.hpp"

namespace spinon {

namespace {

const Complex kHalfI(0.0, 0.5);

inline double dbl(double x) { return x; }
inline double dbl(const Real& x) { return x.to_double(); }
inline double atan_of(double x) { return std::atan(x); }
inline Real atan_of(const Real& x) { return atan(x); }
inline double pi_of(double) { return M_PI; }
inline Real pi_of(const Real&) { return const_pi(); }

// Logarithmic Bethe equations: 2M atan(2 l_j) - 2 pi I_j - sum_k 2 atan(l_j - l_k).
template <class T>
std::vector<T> log_bethe_residual(int M, const std::vector<int>& twice_q, const std::vector<T>& x) {
  const std::size_t n = x.size();
  const T pi = pi_of(x.empty() ? T(0) : x[0]);
  std::vector<T> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    T s = T(2.0 * M) * atan_of(T(2.0) * x[j]) - pi * T(static_cast<double>(twice_q[j]));
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) s -= T(2.0) * atan_of(x[j] - x[k]);
    }
    f[j] = s;
  }
  return f;
}

template <class T>
Matrix<T> log_bethe_jacobian(int M, const std::vector<T>& x) {
  const std::size_t n = x.size();
  Matrix<T> J(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T diag = T(4.0 * M) / (T(1.0) + T(4.0) * x[j] * x[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      T d = x[j] - x[k];
      T off = T(2.0) / (T(1.0) + d * d);
      J(j, k) = off;
      diag -= off;
    }
    J(j, j) = diag;
  }
  return J;
}

std::vector<Real> solve_log_form(int M, const std::vector<int>& twice_q, const std::vector<Real>* seed, long bits) {
  const std::size_t n = twice_q.size();
  std::vector<double> x0(n);
  if (seed && seed->size() == n) {
    for (std::size_t j = 0; j < n; ++j) x0[j] = (*seed)[j].to_double();
  } else {
    for (std::size_t j = 0; j < n; ++j) x0[j] = 0.5 * std::tan(M_PI * (twice_q[j] / 2.0) / M);
  }
  std::function<std::vector<double>(const std::vector<double>&)> Fd = [&](const std::vector<double>& x) {
    return log_bethe_residual<double>(M, twice_q, x);
  };
  std::function<Matrix<double>(const std::vector<double>&)> Jd = [&](const std::vector<double>& x) {
    return log_bethe_jacobian<double>(M, x);
  };
  std::vector<double> xd = newton_solve<double>(Fd, Jd, x0, 1e-10 * M, 200);

  PrecisionScope scope(bits);
  std::vector<Real> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (seed && seed->size() == n && (*seed)[j].precision() >= 53) {
      x[j] = (*seed)[j];
      x[j].round_to(bits);
    } else {
      x[j] = Real(xd[j]);
    }
  }
  std::function<std::vector<Real>(const std::vector<Real>&)> F = [&](const std::vector<Real>& v) {
    return log_bethe_residual<Real>(M, twice_q, v);
  };
  std::function<Matrix<Real>(const std::vector<Real>&)> J = [&](const std::vector<Real>& v) {
    return log_bethe_jacobian<Real>(M, v);
  };
  const Real tol = epsilon_bits(bits - 12) * static_cast<double>(M) * static_cast<double>(M);
  x = newton_solve<Real>(F, J, x, tol, 100);
  std::sort(x.begin(), x.end());
  return x;
}

Real counting_z_impl(int M, const std::vector<Real>& roots, const Real& x) {
  Real s = 2.0 * static_cast<double>(M) * atan(2.0 * x);
  for (const auto& r : roots) s -= 2.0 * atan(x - r);
  return s / (2.0 * const_pi());
}

double counting_z_double(int M, const std::vector<double>& roots, double x) {
  double s = 2.0 * M * std::atan(2.0 * x);
  for (double r : roots) s -= 2.0 * std::atan(x - r);
  return s / (2.0 * M_PI);
}

// Finds x with Z(x) = target: bisection in double, then Newton at full precision.
Real locate_hole(const BetheState& st, double target) {
  std::vector<double> rd;
  for (const auto& r : st.roots) rd.push_back(r.to_double());
  auto g = [&](double x) { return counting_z_double(st.M(), rd, x) - target; };
  double lo = -1.0;
  double hi = 1.0;
  for (int i = 0; g(lo) >= 0; ++i) {
    lo *= 2.0;
    if (i > 60) throw Error(ErrorKind::HoleBracketFailure, "no lower bracket for hole");
  }
  for (int i = 0; g(hi) <= 0; ++i) {
    hi *= 2.0;
    if (i > 60) throw Error(ErrorKind::HoleBracketFailure, "no upper bracket for hole");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  PrecisionScope scope(st.bits);
  Real x(0.5 * (lo + hi));
  const Real tgt(target);
  const Real stop = epsilon_bits(st.bits - 8);
  for (int it = 0; it < 100; ++it) {
    Real dz = counting_z_prime(st, x);
    if (dz.sign() <= 0) throw Error(ErrorKind::HoleBracketFailure, "counting function not increasing at hole");
    Real dx = (counting_z_impl(st.M(), st.roots, x) - tgt) / dz;
    x -= dx;
    if (abs(dx) <= stop * (1.0 + abs(x))) return x;
  }
  throw Error(ErrorKind::NoConvergence, "hole Newton polish did not converge");
}

void finish_state(BetheState& st) {
  PrecisionScope scope(st.bits);
  st.residual = root_residual(st).to_double();
  if (st.kind == StateKind::TwoSpinonTriplet) {
    st.holes.clear();
    const auto all = QuantumNumbers::triplet_slots(st.M());
    for (int slot : {st.slots.first, st.slots.second}) {
      st.holes.push_back(locate_hole(st, all.value(static_cast<std::size_t>(slot - 1))));
    }
    for (const auto& h : st.holes) {
      for (const auto& r : st.roots) {
        if (abs(h - r) < epsilon_bits(st.bits / 2)) {
          throw Error(ErrorKind::HoleBracketFailure, "hole coincides with a root");
        }
      }
    }
  }
}

}  // namespace

void ChainSpec::validate() const {
  if (M < 4 || M % 2 != 0) throw Error(ErrorKind::InvalidArgument, "chain length must be even and >= 4");
  ctx.validate();
}

std::string to_string(StateKind kind) { return kind == StateKind::Ground ? "ground" : "triplet"; }

void QuantumNumbers::validate() const {
  for (std::size_t j = 1; j < twice.size(); ++j) {
    if (twice[j] <= twice[j - 1]) throw Error(ErrorKind::InvalidArgument, "quantum numbers must increase strictly");
  }
}

QuantumNumbers QuantumNumbers::ground(int N) {
  QuantumNumbers q;
  for (int j = 1; j <= N; ++j) q.twice.push_back(2 * j - N - 1);
  return q;
}

QuantumNumbers QuantumNumbers::triplet_slots(int M) {
  QuantumNumbers q;
  for (int k = 0; k <= M / 2; ++k) q.twice.push_back(-M / 2 + 2 * k);
  return q;
}

BetheState solve_ground(const ChainSpec& chain) {
  chain.validate();
  BetheState st;
  st.chain = chain;
  st.kind = StateKind::Ground;
  st.qnums = QuantumNumbers::ground(chain.M / 2);
  st.bits = chain.ctx.bits;
  st.roots = solve_log_form(chain.M, st.qnums.twice, nullptr, st.bits);
  finish_state(st);
  return st;
}

BetheState solve_two_spinon_triplet(const ChainSpec& chain, int a, int b) {
  chain.validate();
  const int slots = chain.M / 2 + 1;
  if (!(1 <= a && a < b && b <= slots)) {
    throw Error(ErrorKind::InvalidArgument, "hole slots must satisfy 1 <= a < b <= M/2+1");
  }
  BetheState st;
  st.chain = chain;
  st.kind = StateKind::TwoSpinonTriplet;
  st.slots = {a, b};
  const auto all = QuantumNumbers::triplet_slots(chain.M);
  for (int s = 1; s <= slots; ++s) {
    if (s != a && s != b) st.qnums.twice.push_back(all.twice[static_cast<std::size_t>(s - 1)]);
  }
  st.bits = chain.ctx.bits;
  st.roots = solve_log_form(chain.M, st.qnums.twice, nullptr, st.bits);
  finish_state(st);
  return st;
}

BetheState refine(const BetheState& state, long bits) {
  BetheState st = state;
  st.bits = bits;
  st.chain.ctx.bits = bits;
  st.roots = solve_log_form(st.M(), st.qnums.twice, &state.roots, bits);
  finish_state(st);
  return st;
}

Real counting_z(const BetheState& state, const Real& x) { return counting_z_impl(state.M(), state.roots, x); }

Real counting_z_prime(const BetheState& state, const Real& x) {
  Real s = 4.0 * static_cast<double>(state.M()) / (1.0 + 4.0 * x * x);
  for (const auto& r : state.roots) {
    Real d = x - r;
    s -= 2.0 / (1.0 + d * d);
  }
  return s / (2.0 * const_pi());
}

Complex baxter_q(const BetheState& state, const Complex& lambda) {
  Complex p(1);
  for (const auto& r : state.roots) p *= lambda - Complex(r);
  return p;
}

Complex log_baxter_q(const BetheState& state, const Complex& lambda) {
  Complex s(0);
  for (const auto& r : state.roots) {
    Complex d = lambda - Complex(r);
    if (d.is_zero()) throw Error(ErrorKind::PoleArgument, "log of q at a root");
    s += log(d);
  }
  return s;
}

Complex counting_a(const BetheState& state, const Complex& lambda) {
  Complex den = lambda + kHalfI;
  if (den.is_zero()) throw Error(ErrorKind::PoleArgument, "counting function at -i/2");
  Complex v = pow((lambda - kHalfI) / den, state.M());
  const Complex I = Complex::I();
  for (const auto& r : state.roots) {
    Complex d = lambda - Complex(r);
    Complex lower = d - I;
    if (lower.is_zero()) throw Error(ErrorKind::PoleArgument, "counting function at a root + i");
    v *= (d + I) / lower;
  }
  return v;
}

Complex counting_a_prime(const BetheState& state, const Complex& lambda) {
  if ((lambda - kHalfI).is_zero()) return Complex(0);
  Complex a = counting_a(state, lambda);
  const Complex I = Complex::I();
  Complex dlog = static_cast<double>(state.M()) * (Complex(1) / (lambda - kHalfI) - Complex(1) / (lambda + kHalfI));
  for (const auto& r : state.roots) {
    Complex d = lambda - Complex(r);
    dlog += Complex(1) / (d + I) - Complex(1) / (d - I);
  }
  return a * dlog;
}

Complex transfer_eigenvalue_tau(const BetheState& state, const Complex& mu) {
  const Complex I = Complex::I();
  const Complex A = pow((mu - kHalfI) / (mu + kHalfI), state.M());
  if (mu.im.is_zero()) {
    const Real near = epsilon_bits(state.bits / 2);
    for (std::size_t j = 0; j < state.N(); ++j) {
      const Real& root = state.roots[j];
      if (abs(mu.re - root) >= near * (1.0 + abs(root))) continue;
      // Removable singularity: N'(mu)/q'(mu) at the root.
      const Complex x(root);
      const Complex Ar = pow((x - kHalfI) / (x + kHalfI), state.M());
      const Complex dlogA = static_cast<double>(state.M()) * (Complex(1) / (x - kHalfI) - Complex(1) / (x + kHalfI));
      const Complex qp = baxter_q(state, x + I);
      const Complex qm = baxter_q(state, x - I);
      Complex sp(0);
      Complex sm(0);
      Complex qprime(1);
      for (std::size_t k = 0; k < state.N(); ++k) {
        const Complex rk(state.roots[k]);
        sp += Complex(1) / (x + I - rk);
        sm += Complex(1) / (x - I - rk);
        if (k != j) qprime *= x - rk;
      }
      Complex nprime = Ar * qp * (dlogA + sp) + qm * sm;
      return nprime / qprime;
    }
  }
  return (A * baxter_q(state, mu + I) + baxter_q(state, mu - I)) / baxter_q(state, mu);
}

Real root_residual(const BetheState& state) {
  Real worst(0);
  for (const auto& r : state.roots) worst = max(worst, abs(counting_a(state, Complex(r)) + 1.0));
  return worst;
}

int real_zero_count(const BetheState& state, double width, int points) {
  std::vector<double> rd;
  for (const auto& r : state.roots) rd.push_back(r.to_double());
  const double offset = (static_cast<double>(rd.size()) + 1.0) / 2.0;
  auto s = [&](double x) { return std::sin(M_PI * (counting_z_double(state.M(), rd, x) - offset)); };
  int count = 0;
  double prev = s(-width);
  for (int i = 1; i < points; ++i) {
    double x = -width + 2.0 * width * i / (points - 1);
    double cur = s(x);
    if ((prev < 0) != (cur < 0)) ++count;
    prev = cur;
  }
  return count;
}

Real energy(const BetheState& state) {
  Real e(0);
  for (const auto& r : state.roots) e -= 2.0 / (r * r + 0.25);
  return e;
}

Real momentum(const BetheState& state) {
  Real p(0);
  for (const auto& r : state.roots) p += const_pi() - 2.0 * atan(2.0 * r);
  Real two_pi = 2.0 * const_pi();
  return p - two_pi * floor(p / two_pi);
}

Real epsilon(const Real& mu) { return const_pi() / (2.0 * cosh(const_pi() * mu)); }

Real momentum_p(const Real& mu) { return const_pi() / 2.0 - atan(sinh(const_pi() * mu)); }

Real two_spinon_energy(const Real& mu1, const Real& mu2) { return 4.0 * (epsilon(mu1) + epsilon(mu2)); }

Real ground_density(const Real& lambda) { return 1.0 / (2.0 * cosh(const_pi() * lambda)); }

Real hole_density(const Real& lambda) {
  Complex a(Real(1), lambda / 2.0);
  Complex b(Real(0.5), lambda / 2.0);
  return (digamma(a) - digamma(b)).re / (2.0 * const_pi());
}

Complex rho_g_kernel(const Complex& lambda, const Complex& mu) {
  Complex d = mu - lambda;
  if (d.re.is_zero() && floor(d.im) == d.im) throw Error(ErrorKind::PoleArgument, "kernel pole at mu - lambda in iZ");
  return Complex(const_pi()) / sinh(d * const_pi());
}

Complex rho_g_kernel_half(const Complex& lambda) {
  return Complex(Real(0), -const_pi()) / cosh(lambda * const_pi());
}

nlohmann::json to_json(const BetheState& state) {
  nlohmann::json j;
  j["M"] = state.M();
  j["kind"] = to_string(state.kind);
  std::vector<double> q;
  for (std::size_t k = 0; k < state.qnums.size(); ++k) q.push_back(state.qnums.value(k));
  j["qnums"] = q;
  const int digits = static_cast<int>(std::ceil(state.bits * 0.30103)) + 2;
  std::vector<std::string> roots;
  for (const auto& r : state.roots) roots.push_back(r.str(digits));
  j["roots"] = roots;
  std::vector<std::string> holes;
  for (const auto& h : state.holes) holes.push_back(h.str(digits));
  j["holes"] = holes;
  if (state.kind == StateKind::TwoSpinonTriplet) j["slots"] = {state.slots.first, state.slots.second};
  j["residual"] = state.residual;
  j["bits"] = state.bits;
  return j;
}

BetheState state_from_json(const nlohmann::json& j) {
  BetheState st;
  const long bits = j.value("bits", 128L);
  st.chain = ChainSpec(j.at("M").get<int>(), PrecisionContext(bits));
  st.bits = bits;
  st.kind = j.at("kind").get<std::string>() == "ground" ? StateKind::Ground : StateKind::TwoSpinonTriplet;
  for (double v : j.at("qnums").get<std::vector<double>>()) st.qnums.twice.push_back(static_cast<int>(std::lround(2 * v)));
  st.qnums.validate();
  PrecisionScope scope(bits);
  for (const auto& s : j.at("roots").get<std::vector<std::string>>()) st.roots.emplace_back(s);
  for (const auto& s : j.at("holes").get<std::vector<std::string>>()) st.holes.emplace_back(s);
  if (j.contains("slots")) st.slots = {j["slots"][0].get<int>(), j["slots"][1].get<int>()};
  st.residual = j.value("residual", 0.0);
  return st;
}

}  // namespace spinon

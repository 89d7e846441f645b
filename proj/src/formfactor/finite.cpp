#include "spinon/formfactor/finite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "spinon/numeric/error.hpp"

namespace spinon {

namespace {

const Complex kHalfI(0.0, 0.5);

// Running complex product kept as (log-modulus, unit-ish mantissa).
class LogProduct {
 public:
  void mul(const Complex& z) {
    if (z.is_zero()) throw Error(ErrorKind::PoleArgument, "zero factor in product");
    acc_ *= z;
    renormalise();
  }
  void div(const Complex& z) {
    if (z.is_zero()) throw Error(ErrorKind::PoleArgument, "zero divisor in product");
    acc_ /= z;
    renormalise();
  }
  void mul(const LogDet& d) {
    log_ += d.log_modulus;
    acc_ *= polar(Real(1), d.phase);
  }
  void div(const LogDet& d) {
    log_ -= d.log_modulus;
    acc_ *= polar(Real(1), -d.phase);
  }
  void mul_log(const Real& log_modulus) { log_ += log_modulus; }

  LogDet result() const {
    Real m = abs(acc_);
    return {log_ + log(m), arg(acc_)};
  }

 private:
  void renormalise() {
    if (++count_ % 32 != 0) return;
    Real m = abs(acc_);
    log_ += log(m);
    acc_ /= m;
  }

  Complex acc_{1};
  Real log_{0};
  long count_ = 0;
};

Complex sinh_pi(const Complex& x) { return sinh(x * const_pi()); }

std::vector<Complex> as_complex(const std::vector<Real>& v) {
  return std::vector<Complex>(v.begin(), v.end());
}

std::vector<Complex> with_half_i(const std::vector<Real>& v) {
  std::vector<Complex> out = as_complex(v);
  out.push_back(kHalfI);
  return out;
}

long common_bits(const BetheState& g, const BetheState& e) {
  if (g.kind != StateKind::Ground) throw Error(ErrorKind::InvalidArgument, "first state must be the ground state");
  if (e.kind != StateKind::TwoSpinonTriplet) throw Error(ErrorKind::InvalidArgument, "second state must be a triplet");
  if (g.M() != e.M()) throw Error(ErrorKind::InvalidArgument, "states belong to different chains");
  return std::min(g.bits, e.bits);
}

Real phase_residual(const Real& phase) {
  Real p = abs(phase);
  return min(p, const_pi() - p);
}

FormFactorResult make_result(const BetheState& e, FormFactorRoute route, long bits, const LogDet& total) {
  FormFactorResult r;
  r.M = e.M();
  r.hole_slots = e.slots;
  r.hole_rapidities = e.holes;
  r.route = route;
  r.bits_used = bits;
  r.value = exp(total.log_modulus);
  r.diagnostics["log_value"] = total.log_modulus.to_double();
  r.diagnostics["phase_residual"] = phase_residual(total.phase).to_double();
  return r;
}

// chi = tau_e / tau_g at a real point.
Complex tau_ratio(const BetheState& g, const BetheState& e, const Real& x) {
  return transfer_eigenvalue_tau(e, Complex(x)) / transfer_eigenvalue_tau(g, Complex(x));
}

// Shared rational prefactor
// prod chi(lg) / prod chi(le) * prod (l - m)^2 / (prod_{j!=k} (lg_j - lg_k) prod_{j!=k} (le_j - le_k)).
void rational_prefactor(const BetheState& g, const BetheState& e, LogProduct& p) {
  for (const auto& l : g.roots) p.mul(tau_ratio(g, e, l));
  for (const auto& m : e.roots) p.div(tau_ratio(g, e, m));
  for (const auto& l : g.roots) {
    for (const auto& m : e.roots) {
      Real d = l - m;
      p.mul(Complex(d * d));
    }
  }
  for (const auto* v : {&g.roots, &e.roots}) {
    for (std::size_t j = 0; j < v->size(); ++j) {
      for (std::size_t k = 0; k < v->size(); ++k) {
        if (j != k) p.div(Complex((*v)[j] - (*v)[k]));
      }
    }
  }
}

FormFactorResult determinant_once(const BetheState& g, const BetheState& e, long bits) {
  PrecisionScope scope(bits);
  const PrecisionContext ctx(bits);
  const Complex I = Complex::I();

  LogProduct q_ratio;
  for (const auto& mu : e.roots) {
    Complex x = Complex(mu) - I;
    q_ratio.mul(baxter_q(g, x));
    q_ratio.div(baxter_q(e, x));
  }
  for (const auto& l : g.roots) {
    Complex x = Complex(l) - I;
    q_ratio.mul(baxter_q(e, x));
    q_ratio.div(baxter_q(g, x));
  }
  LogDet pre = q_ratio.result();
  LogDet d_slavnov = det_logscaled(slavnov_matrix(g, with_half_i(e.roots)), ctx);
  LogDet d_fw = det_logscaled(foda_wheeler_matrix(e, with_half_i(g.roots)), ctx);
  LogDet d_gg = det_logscaled(gaudin_matrix(g), ctx);
  LogDet d_ge = det_logscaled(gaudin_matrix(e), ctx);

  LogProduct total;
  total.mul(Complex(-2));
  total.mul(pre);
  total.mul(d_slavnov);
  total.mul(d_fw);
  total.div(d_gg);
  total.div(d_ge);

  FormFactorResult r = make_result(e, FormFactorRoute::Determinant, bits, total.result());
  r.diagnostics["log_q_ratio"] = pre.log_modulus.to_double();
  r.diagnostics["log_det_slavnov"] = d_slavnov.log_modulus.to_double();
  r.diagnostics["log_det_extended"] = d_fw.log_modulus.to_double();
  r.diagnostics["log_det_gaudin_ground"] = d_gg.log_modulus.to_double();
  r.diagnostics["log_det_gaudin_excited"] = d_ge.log_modulus.to_double();
  return r;
}

}  // namespace

std::string to_string(FormFactorRoute route) {
  switch (route) {
    case FormFactorRoute::Determinant:
      return "det";
    case FormFactorRoute::Cauchy:
      return "cauchy";
    case FormFactorRoute::SinhProduct:
      return "sinh";
  }
  return "?";
}

FormFactorRoute route_from_string(const std::string& name) {
  if (name == "det") return FormFactorRoute::Determinant;
  if (name == "cauchy") return FormFactorRoute::Cauchy;
  if (name == "sinh") return FormFactorRoute::SinhProduct;
  throw Error(ErrorKind::InvalidArgument, "unknown route '" + name + "'");
}

nlohmann::json FormFactorResult::to_json() const {
  nlohmann::json j;
  j["M"] = M;
  j["slots"] = {hole_slots.first, hole_slots.second};
  nlohmann::json mu = nlohmann::json::array();
  for (const auto& h : hole_rapidities) mu.push_back(h.str(20));
  j["mu_h"] = mu;
  j["value"] = value.str(20);
  j["route"] = to_string(route);
  j["bits_used"] = bits_used;
  j["diagnostics"] = diagnostics;
  return j;
}

Complex kernel_t(const Complex& x) {
  const Complex I = Complex::I();
  Complex den = x * (x + I);
  if (den.is_zero()) throw Error(ErrorKind::PoleArgument, "t(x) at x in {0, -i}");
  return I / den;
}

Complex kernel_k(const Complex& x) {
  Complex den = x * x + 1.0;
  if (den.is_zero()) throw Error(ErrorKind::PoleArgument, "K(x) at x = +-i");
  return Complex(0.0, 2.0) / den;
}

ComplexMatrix slavnov_matrix(const BetheState& on_shell, const std::vector<Complex>& params) {
  const std::size_t n = on_shell.N();
  if (params.size() != n) throw Error(ErrorKind::InvalidArgument, "slavnov_matrix: parameter count mismatch");
  ComplexMatrix s(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex a = counting_a(on_shell, params[k]);
    for (std::size_t j = 0; j < n; ++j) {
      Complex d = params[k] - Complex(on_shell.roots[j]);
      s(j, k) = a * kernel_t(d) - kernel_t(-d);
    }
  }
  return s;
}

ComplexMatrix gaudin_matrix(const BetheState& state) {
  const std::size_t n = state.N();
  ComplexMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      g(j, k) = -kernel_k(Complex(state.roots[j] - state.roots[k]));
      if (j == k) g(j, k) += counting_a_prime(state, Complex(state.roots[j]));
    }
  }
  return g;
}

ComplexMatrix foda_wheeler_matrix(const BetheState& state, const std::vector<Complex>& params) {
  const std::size_t n = state.N();
  if (params.size() != n + 2) throw Error(ErrorKind::InvalidArgument, "foda_wheeler_matrix: need N + 2 parameters");
  const Complex I = Complex::I();
  ComplexMatrix f(n + 2, n + 2);
  for (std::size_t k = 0; k < n + 2; ++k) {
    const Complex& p = params[k];
    Complex a = counting_a(state, p);
    for (std::size_t j = 0; j < n; ++j) {
      Complex d = p - Complex(state.roots[j]);
      f(j, k) = a * kernel_t(d) - kernel_t(-d);
    }
    f(n, k) = a - 1.0;
    f(n + 1, k) = a * (p + I) - p;
  }
  return f;
}

FormFactorResult ff_determinant(const BetheState& g, const BetheState& e) {
  long bits = common_bits(g, e);
  BetheState gs = g;
  BetheState es = e;
  const int max_esc = std::max(g.chain.ctx.max_escalations, e.chain.ctx.max_escalations);
  std::string last_problem;
  for (int esc = 0; esc <= max_esc; ++esc) {
    if (esc > 0) {
      bits *= 2;
      gs = refine(gs, bits);
      es = refine(es, bits);
    }
    try {
      FormFactorResult r = determinant_once(gs, es, bits);
      const double tol = std::ldexp(1.0, static_cast<int>(-bits / 4));
      if (r.diagnostics["phase_residual"] < tol) {
        r.diagnostics["escalations"] = esc;
        return r;
      }
      last_problem = "phase residual " + std::to_string(r.diagnostics["phase_residual"]);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::SingularMatrix) throw;
      last_problem = err.what();
    }
  }
  throw Error(ErrorKind::PrecisionExhausted, "ff_determinant at " + std::to_string(bits) + " bits: " + last_problem);
}

ComplexMatrix cauchy_sinh_matrix(const std::vector<Complex>& rows, const std::vector<Complex>& cols) {
  if (rows.size() != cols.size()) throw Error(ErrorKind::InvalidArgument, "cauchy_sinh_matrix: not square");
  const std::size_t n = rows.size();
  ComplexMatrix c(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) c(j, k) = rho_g_kernel(rows[j], cols[k]);
  }
  return c;
}

LogDet cauchy_sinh_det(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "cauchy_sinh_det: size mismatch");
  const std::size_t n = x.size();
  LogProduct p;
  p.mul_log(log(const_pi()) * static_cast<long>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      p.mul(sinh_pi(x[j] - x[k]));
      p.mul(sinh_pi(y[k] - y[j]));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex s = sinh_pi(y[k] - x[j]);
      if (s.is_zero()) throw Error(ErrorKind::PoleArgument, "coincident Cauchy nodes");
      p.div(s);
    }
  }
  return p.result();
}

LogDet big_cauchy_det(const std::vector<Real>& lg, const std::vector<Real>& le, const Real& h1, const Real& h2) {
  if (le.size() + 1 != lg.size()) throw Error(ErrorKind::InvalidArgument, "big_cauchy_det: need n and n-1 nodes");
  const std::size_t n = lg.size();
  const Real pi = const_pi();
  LogProduct p;
  p.mul_log(log(pi) * static_cast<long>(n + 1));
  p.mul(sinh_pi(Complex(h2 - h1)));
  p.div(Complex(cosh(pi * h1) * cosh(pi * h2)));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) p.mul(sinh_pi(Complex(lg[j] - lg[k])));
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) p.mul(sinh_pi(Complex(le[k] - le[j])));
  }
  for (const auto& l : lg) {
    for (const auto& m : le) {
      Complex s = sinh_pi(Complex(l - m));
      if (s.is_zero()) throw Error(ErrorKind::PoleArgument, "coincident Cauchy nodes");
      p.div(s);
    }
  }
  for (const Real* h : {&h1, &h2}) {
    for (const auto& m : le) p.mul(sinh_pi(Complex(*h - m)));
    for (const auto& l : lg) p.div(sinh_pi(Complex(*h - l)));
  }
  for (const auto& l : lg) p.mul(sinh_pi(kHalfI - Complex(l)));
  for (const auto& m : le) p.div(sinh_pi(kHalfI - Complex(m)));
  return p.result();
}

LogDet small_cauchy_det(const std::vector<Real>& lg, const std::vector<Real>& le) {
  if (le.size() + 1 != lg.size()) throw Error(ErrorKind::InvalidArgument, "small_cauchy_det: need n and n-1 nodes");
  const std::size_t n = lg.size();
  LogProduct p;
  p.mul_log(log(const_pi()) * static_cast<long>(n));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) p.mul(sinh_pi(Complex(le[j] - le[k])));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) p.mul(sinh_pi(Complex(lg[k] - lg[j])));
  }
  for (const auto& m : le) {
    for (const auto& l : lg) {
      Complex s = sinh_pi(Complex(m - l));
      if (s.is_zero()) throw Error(ErrorKind::PoleArgument, "coincident Cauchy nodes");
      p.div(s);
    }
  }
  for (const auto& m : le) p.mul(sinh_pi(kHalfI - Complex(m)));
  for (const auto& l : lg) p.div(sinh_pi(kHalfI - Complex(l)));
  return p.result();
}

ComplexMatrix excited_cauchy_matrix(const BetheState& g, const BetheState& e) {
  common_bits(g, e);
  if (e.holes.size() != 2) throw Error(ErrorKind::InvalidArgument, "excited state needs two holes");
  const std::size_t n = g.N();
  const std::vector<Complex> lams = with_half_i(g.roots);
  const Complex two_pi_i(Real(0), 2.0 * const_pi());
  std::vector<Complex> inv_ap;
  for (const auto& h : e.holes) inv_ap.push_back(Complex(1) / counting_a_prime(e, Complex(h)));
  // weight[j][h] = 2 pi i rho_h(mu_j - mu_h) / a'_e(mu_h)
  std::vector<std::array<Complex, 2>> weight(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t h = 0; h < 2; ++h) {
      weight[j][h] = two_pi_i * Complex(hole_density(e.roots[j] - e.holes[h])) * inv_ap[h];
    }
  }
  ComplexMatrix r(n + 1, n + 1);
  for (std::size_t k = 0; k < n + 1; ++k) {
    const Complex& lk = lams[k];
    Complex a = counting_a(e, lk);
    std::vector<Complex> hole_col;
    for (const auto& h : e.holes) hole_col.push_back(rho_g_kernel(Complex(h), lk));
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Complex v = rho_g_kernel(Complex(e.roots[j]), lk);
      for (std::size_t h = 0; h < 2; ++h) {
        v -= weight[j][h] * hole_col[h];
      }
      r(j, k) = v;
    }
    r(n - 1, k) = (a - 1.0) / (a + 1.0);
    r(n, k) = (a * (lk + Complex::I()) - lk) / (a + 1.0);
  }
  return r;
}

FormFactorResult ff_cauchy(const BetheState& g, const BetheState& e) {
  const long bits = common_bits(g, e);
  PrecisionScope scope(bits);
  const PrecisionContext ctx(bits);
  LogDet d_g = det_logscaled(cauchy_sinh_matrix(as_complex(g.roots), with_half_i(e.roots)), ctx);
  LogDet d_e = det_logscaled(excited_cauchy_matrix(g, e), ctx);
  LogProduct p;
  p.mul(Complex(-2));
  rational_prefactor(g, e, p);
  LogDet pre = p.result();
  p.mul(d_g);
  p.mul(d_e);
  FormFactorResult r = make_result(e, FormFactorRoute::Cauchy, bits, p.result());
  r.diagnostics["log_prefactor"] = pre.log_modulus.to_double();
  r.diagnostics["log_det_ground_cauchy"] = d_g.log_modulus.to_double();
  r.diagnostics["log_det_excited_cauchy"] = d_e.log_modulus.to_double();
  return r;
}

FormFactorResult ff_sinh_product(const BetheState& g, const BetheState& e) {
  const long bits = common_bits(g, e);
  if (e.holes.size() != 2) throw Error(ErrorKind::InvalidArgument, "excited state needs two holes");
  PrecisionScope scope(bits);
  const Real pi = const_pi();
  const Real& h1 = e.holes[0];
  const Real& h2 = e.holes[1];
  const int M = e.M();
  LogProduct p;
  p.mul_log(log(pi) * static_cast<long>(M - 1));
  p.mul(Complex(2.0 * (h1 - h2) / static_cast<double>(M) / static_cast<double>(M)));
  p.mul(sinh_pi(Complex(h1 - h2)));
  rational_prefactor(g, e, p);
  for (const Real* h : {&h1, &h2}) {
    for (const auto& m : e.roots) p.mul(sinh_pi(Complex(*h - m)));
    for (const auto& l : g.roots) p.div(sinh_pi(Complex(*h - l)));
  }
  for (const auto* v : {&g.roots, &e.roots}) {
    for (std::size_t j = 0; j < v->size(); ++j) {
      for (std::size_t k = 0; k < v->size(); ++k) {
        if (j != k) p.mul(sinh_pi(Complex((*v)[j] - (*v)[k])));
      }
    }
  }
  for (const auto& l : g.roots) {
    for (const auto& m : e.roots) {
      Complex s = sinh_pi(Complex(l - m));
      p.div(s * s);
    }
  }
  return make_result(e, FormFactorRoute::SinhProduct, bits, p.result());
}

FormFactorResult ff_route(const BetheState& g, const BetheState& e, FormFactorRoute route) {
  switch (route) {
    case FormFactorRoute::Determinant:
      return ff_determinant(g, e);
    case FormFactorRoute::Cauchy:
      return ff_cauchy(g, e);
    case FormFactorRoute::SinhProduct:
      return ff_sinh_product(g, e);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown route");
}

TwoRowReduction two_row_reduction(const BetheState& g, const BetheState& e) {
  const long bits = common_bits(g, e);
  PrecisionScope scope(bits);
  const PrecisionContext ctx(bits);
  const std::size_t n = g.N();
  std::vector<Complex> nu = as_complex(e.roots);
  for (const auto& h : e.holes) nu.push_back(Complex(h));
  ComplexMatrix c = cauchy_sinh_matrix(nu, with_half_i(g.roots));
  ComplexMatrix p = multiply(excited_cauchy_matrix(g, e), inverse(c));
  TwoRowReduction out;
  out.det_full = det_logscaled(p, ctx).value();
  out.predicted = Complex(e.holes[1] - e.holes[0]) /
                  (counting_a_prime(e, Complex(e.holes[0])) * counting_a_prime(e, Complex(e.holes[1])));
  out.relative_gap = abs(out.det_full - out.predicted) / abs(out.predicted);
  out.block_residual = Real(0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      Complex d = p(j, k) - Complex(j == k ? 1.0 : 0.0);
      out.block_residual = max(out.block_residual, abs(d));
    }
  }
  return out;
}

}  // namespace spinon

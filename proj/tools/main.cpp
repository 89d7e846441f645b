#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinon/bethe/bethe.hpp"
#include "spinon/ed/ed.hpp"
#include "spinon/formfactor/finite.hpp"
#include "spinon/formfactor/tdl.hpp"
#include "spinon/numeric/error.hpp"
#include "spinon/special/barnes.hpp"
#include "spinon/special/gamma.hpp"

using namespace spinon;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kDigits = 17;

struct RunConfig {
  int M = 0;
  std::vector<int> M_list;
  std::vector<int> slots;
  double dmu = 0;
  bool have_dmu = false;
  long bits = 0;  // 0: per-chain default
  std::string route = "det";
  std::string format;
  std::string out;
  std::string cache;
  double fraction = 0.25;
  int jobs = 1;
};

// A table of string cells; rendered as CSV or as a JSON array of records.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream os;
    if (format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        json rec = json::object();
        for (std::size_t i = 0; i < header.size(); ++i) rec[header[i]] = r[i];
        arr.push_back(rec);
      }
      os << arr.dump(2) << '\n';
      return os.str();
    }
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
    return os.str();
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::trunc);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + cfg.out);
  f << text;
}

std::string num(const Real& x) { return x.str(kDigits); }
std::string num(double x) {
  std::ostringstream os;
  os.precision(kDigits);
  os << x;
  return os.str();
}

ChainSpec chain_for(int M, long bits) {
  if (M % 2 != 0 || M < 4) throw Error(ErrorKind::InvalidArgument, "M must be even and at least 4");
  return bits > 0 ? ChainSpec(M, PrecisionContext(bits)) : ChainSpec(M);
}

std::pair<int, int> slots_of(const RunConfig& cfg, int M) {
  if (!cfg.slots.empty()) {
    if (cfg.slots.size() != 2) throw Error(ErrorKind::InvalidArgument, "--slots takes two values i,j");
    return {cfg.slots[0], cfg.slots[1]};
  }
  const int avail = M / 2 + 1;
  const int a = static_cast<int>(std::lround(cfg.fraction * M / 2.0));
  return {a + 1, avail - a};
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, n); ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string state_csv(const BetheState& st) {
  Table t;
  t.header = {"M", "kind", "slot1", "slot2", "energy", "momentum", "residual", "mu_h1", "mu_h2", "bits_used"};
  PrecisionScope scope(st.bits);
  std::string h1 = st.holes.size() == 2 ? num(st.holes[0]) : "";
  std::string h2 = st.holes.size() == 2 ? num(st.holes[1]) : "";
  t.rows.push_back({std::to_string(st.M()), to_string(st.kind), std::to_string(st.slots.first),
                    std::to_string(st.slots.second), num(energy(st)), num(momentum(st)), num(st.residual), h1, h2,
                    std::to_string(st.bits)});
  return t.render("csv");
}

int cmd_ground(const RunConfig& cfg) {
  BetheState g = solve_ground(chain_for(cfg.M, cfg.bits));
  std::cerr << "residual " << g.residual << '\n';
  emit(cfg, cfg.format == "csv" ? state_csv(g) : to_json(g).dump(2) + "\n");
  return 0;
}

int cmd_excite(const RunConfig& cfg) {
  if (cfg.slots.size() != 2) throw Error(ErrorKind::InvalidArgument, "excite needs --slots i,j");
  BetheState e = solve_two_spinon_triplet(chain_for(cfg.M, cfg.bits), cfg.slots[0], cfg.slots[1]);
  std::cerr << "residual " << e.residual << '\n';
  emit(cfg, cfg.format == "csv" ? state_csv(e) : to_json(e).dump(2) + "\n");
  return 0;
}

Table ff_table() {
  Table t;
  t.header = {"M", "slot1", "slot2", "mu_h1", "mu_h2", "route", "value", "phase_residual", "bits_used"};
  return t;
}

int cmd_ff(const RunConfig& cfg) {
  const FormFactorRoute route = route_from_string(cfg.route);
  if (cfg.slots.size() != 2) throw Error(ErrorKind::InvalidArgument, "ff needs --slots i,j");
  ChainSpec chain = chain_for(cfg.M, cfg.bits);
  BetheState g = solve_ground(chain);
  BetheState e = solve_two_spinon_triplet(chain, cfg.slots[0], cfg.slots[1]);
  FormFactorResult r = ff_route(g, e, route);
  if (cfg.format == "json") {
    emit(cfg, r.to_json().dump(2) + "\n");
    return 0;
  }
  PrecisionScope scope(r.bits_used);
  Table t = ff_table();
  t.rows.push_back({std::to_string(r.M), std::to_string(r.hole_slots.first), std::to_string(r.hole_slots.second),
                    num(r.hole_rapidities[0]), num(r.hole_rapidities[1]), to_string(r.route), num(r.value),
                    num(r.diagnostics.at("phase_residual")), std::to_string(r.bits_used)});
  emit(cfg, t.render("csv"));
  return 0;
}

int cmd_tdl(const RunConfig& cfg) {
  Table t;
  t.header = {"M", "slot1", "slot2", "dmu", "closed_form", "integral_rep", "rel_diff", "bits_used"};
  const long bits = cfg.bits > 0 ? cfg.bits : 128;
  PrecisionScope scope(bits);
  HolePair holes;
  std::string m_col, s1, s2;
  if (cfg.have_dmu) {
    holes = {Real(cfg.dmu), Real(0)};
  } else {
    if (cfg.M == 0 || cfg.slots.size() != 2) throw Error(ErrorKind::InvalidArgument, "tdl needs --dmu or --M with --slots");
    BetheState e = solve_two_spinon_triplet(chain_for(cfg.M, 0), cfg.slots[0], cfg.slots[1]);
    holes = HolePair::of(e);
    m_col = std::to_string(cfg.M);
    s1 = std::to_string(cfg.slots[0]);
    s2 = std::to_string(cfg.slots[1]);
  }
  Real closed = ff_closed_form(holes);
  IntegralRepValue integral = ff_integral_rep(holes);
  Real rel = closed.is_zero() ? abs(integral.value) : abs(closed - integral.value) / closed;
  t.rows.push_back({m_col, s1, s2, num(holes.delta()), num(closed), num(integral.value), num(rel), std::to_string(bits)});
  emit(cfg, t.render(cfg.format.empty() ? "csv" : cfg.format));
  return 0;
}

int cmd_converge(const RunConfig& cfg) {
  if (cfg.M_list.empty()) throw Error(ErrorKind::InvalidArgument, "converge needs a non-empty --M-list");
  for (int M : cfg.M_list) chain_for(M, cfg.bits);
  Table t;
  t.header = {"M", "slot1", "slot2", "mu_h1", "mu_h2", "ff_det_scaled", "ff_tdl", "rel_dev", "bits_used"};
  t.rows.resize(cfg.M_list.size());
  parallel_for(static_cast<int>(cfg.M_list.size()), cfg.jobs, [&](int i) {
    const int M = cfg.M_list[static_cast<std::size_t>(i)];
    ChainSpec chain = chain_for(M, cfg.bits);
    auto [a, b] = slots_of(cfg, M);
    BetheState g = solve_ground(chain);
    BetheState e = solve_two_spinon_triplet(chain, a, b);
    FormFactorResult r = ff_determinant(g, e);
    PrecisionScope scope(r.bits_used);
    Real scaled = r.value * static_cast<long>(M) * static_cast<long>(M);
    Real tdl = scaled_ff_prediction(e);
    Real rel = abs(scaled - tdl) / tdl;
    t.rows[static_cast<std::size_t>(i)] = {std::to_string(M), std::to_string(a), std::to_string(b),
                                           num(e.holes[0]), num(e.holes[1]), num(scaled), num(tdl), num(rel),
                                           std::to_string(r.bits_used)};
  });
  emit(cfg, t.render(cfg.format.empty() ? "csv" : cfg.format));
  return 0;
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> ed_suite(int M, const std::string& cache, int jobs) {
  std::vector<Check> out;
  EdSpectrum sp = cache.empty() ? ed_spectrum(M, 0) : cached_spectrum(M, 0, cache);
  const double sr = sum_rule(sp);
  out.push_back({"ed.sum_rule", std::abs(sr - 1.0) <= 1e-12, "sum " + num(sr)});
  ChainSpec chain(M);
  BetheState g = solve_ground(chain);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= M / 2 + 1; ++a) {
    for (int b = a + 1; b <= M / 2 + 1; ++b) pairs.emplace_back(a, b);
  }
  std::vector<double> rel(pairs.size());
  parallel_for(static_cast<int>(pairs.size()), jobs, [&](int i) {
    auto [a, b] = pairs[static_cast<std::size_t>(i)];
    BetheState e = solve_two_spinon_triplet(chain, a, b);
    FormFactorResult r = ff_determinant(g, e);
    EdFormFactor f = ff_ed(sp, energy(e).to_double(), bethe_momentum_index(e));
    rel[static_cast<std::size_t>(i)] = std::abs(r.value.to_double() - f.value) / f.value;
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out.push_back({"ed.ff_det_vs_ed[" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + "]",
                   rel[i] <= 1e-10, "rel " + num(rel[i])});
  }
  return out;
}

std::vector<Check> cauchy_suite() {
  std::vector<Check> out;
  PrecisionScope scope(128);
  const PrecisionContext ctx(128);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> spacing(0.05, 1.0), jitter(-0.3, 0.3);
  double worst = 0;
  for (int n = 2; n <= 12; ++n) {
    // interlaced lattices; excited slots 0 and n are left as holes
    const double s = spacing(rng);
    std::vector<Real> lg, le;
    for (int k = 0; k < n; ++k) lg.emplace_back((k + jitter(rng)) * s);
    for (int k = 1; k < n; ++k) le.emplace_back((k - 0.5 + jitter(rng)) * s);
    Real h1((-0.5 + jitter(rng)) * s), h2((n - 0.5 + jitter(rng)) * s);
    std::vector<Complex> lams(lg.begin(), lg.end()), mus(le.begin(), le.end()), nu(le.begin(), le.end());
    lams.emplace_back(0.0, 0.5);
    mus.emplace_back(0.0, 0.5);
    nu.emplace_back(h1);
    nu.emplace_back(h2);
    Complex big = det_logscaled(cauchy_sinh_matrix(nu, lams), ctx).value();
    Complex small = det_logscaled(cauchy_sinh_matrix(std::vector<Complex>(lg.begin(), lg.end()), mus), ctx).value();
    worst = std::max(worst, (abs(big - big_cauchy_det(lg, le, h1, h2).value()) / abs(big)).to_double());
    worst = std::max(worst, (abs(small - small_cauchy_det(lg, le).value()) / abs(small)).to_double());
  }
  out.push_back({"cauchy.closed_forms", worst <= std::ldexp(1.0, -64), "worst rel " + num(worst)});
  return out;
}

std::vector<Check> barnes_suite() {
  std::vector<Check> out;
  PrecisionScope scope(128);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-2.5, 3.5), im(-2.0, 2.0);
  double worst_rec = 0, worst_route = 0;
  for (int i = 0; i < 20; ++i) {
    Complex z(re(rng), im(rng));
    Complex g0 = barnes_g(z);
    Complex g1 = barnes_g(z + 1.0);
    worst_rec = std::max(worst_rec, (abs(g1 - gamma(z) * g0) / abs(g1)).to_double());
    Complex gi = barnes_g(z, BarnesRoute::Integral);
    worst_route = std::max(worst_route, (abs(gi - g0) / abs(g0)).to_double());
  }
  out.push_back({"barnes.recurrence", worst_rec <= 1e-20, "worst rel " + num(worst_rec)});
  out.push_back({"barnes.route_equivalence", worst_route <= 1e-20, "worst rel " + num(worst_route)});
  Real closed = ff_closed_form({Real(1), Real(0)});
  Real integral = ff_integral_rep({Real(1), Real(0)}).value;
  double rel = (abs(closed - integral) / closed).to_double();
  out.push_back({"tdl.closed_vs_integral", rel <= 1e-8, "rel " + num(rel)});
  return out;
}

int cmd_validate(const RunConfig& cfg) {
  if (cfg.M % 2 != 0 || cfg.M < 4) throw Error(ErrorKind::InvalidArgument, "M must be even and at least 4");
  if (cfg.M > 14) throw Error(ErrorKind::SizeLimit, "validate runs exact diagonalisation, M <= 14");
  std::vector<Check> checks = ed_suite(cfg.M, cfg.cache, cfg.jobs);
  for (auto& c : cauchy_suite()) checks.push_back(c);
  for (auto& c : barnes_suite()) checks.push_back(c);
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.detail << '\n';
    if (!c.pass) ++failed;
  }
  os << (failed ? "FAILED " + std::to_string(failed) + " of " : "ALL PASSED ") << checks.size() << " checks\n";
  emit(cfg, os.str());
  return failed ? kExitNumeric : 0;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--bits", cfg.bits, "working precision in bits (default max(128, 12 M))")->check(CLI::Range(64L, 1L << 20));
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "write output to PATH instead of stdout");
  sub->add_option("--jobs", cfg.jobs, "parallel jobs over independent (M, slots)")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-spinon form factors of the periodic XXX chain"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* ground = app.add_subcommand("ground", "solve the ground state; JSON {M, kind, qnums, roots, holes, residual}");
  ground->add_option("--M", cfg.M, "chain length (even)")->required();
  add_common(ground, cfg);

  auto* excite = app.add_subcommand("excite", "solve a two-spinon triplet with hole slots i<j out of M/2+1");
  excite->add_option("--M", cfg.M, "chain length (even)")->required();
  excite->add_option("--slots", cfg.slots, "1-based hole slots i,j")->delimiter(',')->expected(2)->required();
  add_common(excite, cfg);

  auto* ff = app.add_subcommand("ff", "|F_z|^2; CSV: M,slot1,slot2,mu_h1,mu_h2,route,value,phase_residual,bits_used");
  ff->add_option("--M", cfg.M, "chain length (even)")->required();
  ff->add_option("--slots", cfg.slots, "1-based hole slots i,j")->delimiter(',')->expected(2)->required();
  ff->add_option("--route", cfg.route, "det, cauchy or sinh")->check(CLI::IsMember({"det", "cauchy", "sinh"}));
  add_common(ff, cfg);

  auto* tdl = app.add_subcommand("tdl", "scaled limit; CSV: M,slot1,slot2,dmu,closed_form,integral_rep,rel_diff,bits_used");
  auto* dmu_opt = tdl->add_option("--dmu", cfg.dmu, "hole separation");
  auto* tdl_m = tdl->add_option("--M", cfg.M, "chain length, with --slots");
  tdl->add_option("--slots", cfg.slots, "1-based hole slots i,j")->delimiter(',')->expected(2)->needs(tdl_m);
  dmu_opt->excludes(tdl_m);
  add_common(tdl, cfg);

  auto* converge = app.add_subcommand(
      "converge", "M^2 |F_z|^2 against the limit; CSV: M,slot1,slot2,mu_h1,mu_h2,ff_det_scaled,ff_tdl,rel_dev,bits_used");
  converge->add_option("--M-list", cfg.M_list, "chain lengths a,b,c")->delimiter(',')->required();
  converge->add_option("--slots", cfg.slots, "fixed 1-based hole slots i,j")->delimiter(',')->expected(2);
  converge->add_option("--fraction", cfg.fraction, "slot fraction used when --slots is absent")
      ->check(CLI::Range(0.0, 0.5));
  add_common(converge, cfg);

  auto* validate = app.add_subcommand("validate", "ED oracle, Cauchy identity and Barnes-G checks");
  validate->add_option("--M", cfg.M, "chain length (even, <= 14)")->required();
  validate->add_option("--cache", cfg.cache, "directory for cached ED spectra");
  add_common(validate, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  cfg.have_dmu = dmu_opt->count() > 0;

  try {
    if (*ground) return cmd_ground(cfg);
    if (*excite) return cmd_excite(cfg);
    if (*ff) return cmd_ff(cfg);
    if (*tdl) return cmd_tdl(cfg);
    if (*converge) return cmd_converge(cfg);
    if (*validate) return cmd_validate(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool usage = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::SizeLimit;
    return usage ? kExitUsage : kExitNumeric;
  }
  return kExitUsage;
}

#include "spinon/ed/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "spinon/numeric/error.hpp"

namespace spinon {

namespace {

using cd = std::complex<double>;

constexpr std::uint32_t kMagic = 0x53504544;  // "SPED"
constexpr std::uint32_t kVersion = 1;

void check_size(int M, int sz) {
  if (M > 14) throw Error(ErrorKind::SizeLimit, "exact diagonalisation limited to M <= 14");
  if (M < 4 || M % 2 != 0) throw Error(ErrorKind::InvalidArgument, "M must be even and at least 4");
  if (sz < -M / 2 || sz > M / 2) throw Error(ErrorKind::InvalidArgument, "S^z outside [-M/2, M/2]");
}

std::uint32_t rotate(std::uint32_t s, int M) {
  const std::uint32_t full = (1u << M) - 1u;
  return ((s << 1) | (s >> (M - 1))) & full;
}

// Applies H to a basis state: diagonal part and the flipped neighbours (each with amplitude 2).
template <class F>
void apply_h(std::uint32_t s, int M, double& diag, F&& on_flip) {
  diag = 0;
  for (int m = 0; m < M; ++m) {
    const int n = (m + 1) % M;
    const bool a = (s >> m) & 1u;
    const bool b = (s >> n) & 1u;
    if (a != b) {
      diag -= 2.0;
      on_flip(s ^ ((1u << m) | (1u << n)));
    }
  }
}

struct Orbit {
  std::uint32_t rep;
  int shift;  // s = T^shift rep
};

Orbit orbit_of(std::uint32_t s, int M) {
  std::uint32_t best = s;
  int best_m = 0;
  std::uint32_t cur = s;
  for (int m = 1; m < M; ++m) {
    cur = rotate(cur, M);
    if (cur < best) {
      best = cur;
      best_m = m;
    }
  }
  return {best, (M - best_m) % M};
}

int period_of(std::uint32_t s, int M) {
  std::uint32_t cur = rotate(s, M);
  int p = 1;
  while (cur != s) {
    cur = rotate(cur, M);
    ++p;
  }
  return p;
}

cd phase(int j, int n, int M) {
  const double k = 2.0 * M_PI * j / M;
  return std::polar(1.0, k * n);
}

// Coefficients <v_r|x> of a full-space vector on the orbit states of a block.
Eigen::VectorXcd project(const MomentumBlock& blk, int M, const Eigen::VectorXcd& x,
                         const std::unordered_map<std::uint32_t, int>& index) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(blk.reps.size()));
  for (std::size_t r = 0; r < blk.reps.size(); ++r) {
    const int p = blk.periods[r];
    cd acc = 0;
    std::uint32_t s = blk.reps[r];
    for (int n = 0; n < p; ++n) {
      acc += phase(blk.j, n, M) * x(index.at(s));
      s = rotate(s, M);
    }
    c(static_cast<Eigen::Index>(r)) = acc / std::sqrt(static_cast<double>(p));
  }
  return c;
}

std::unordered_map<std::uint32_t, int> index_of(const std::vector<std::uint32_t>& basis) {
  std::unordered_map<std::uint32_t, int> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], static_cast<int>(i));
  return idx;
}

// Amplitudes <level|sz_m|g> for every level, in levels order.
std::vector<cd> amplitudes(const EdSpectrum& sp, int site) {
  const EdLevel g = ed_ground_level(sp);
  const auto basis = sector_basis(sp.M, sp.sz);
  const auto idx = index_of(basis);
  Eigen::VectorXcd x = sp.full_vector(g);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!((basis[i] >> site) & 1u)) x(static_cast<Eigen::Index>(i)) = -x(static_cast<Eigen::Index>(i));
  }
  std::vector<Eigen::VectorXcd> per_block;
  for (const auto& blk : sp.blocks) per_block.push_back(blk.vectors.adjoint() * project(blk, sp.M, x, idx));
  std::vector<cd> out;
  out.reserve(sp.levels.size());
  for (const auto& lv : sp.levels) out.push_back(per_block[static_cast<std::size_t>(lv.block)](lv.column));
  return out;
}

template <class T>
void put(std::vector<char>& buf, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  buf.insert(buf.end(), p, p + sizeof(T));
}

template <class T>
bool get(const std::vector<char>& buf, std::size_t& pos, T& v) {
  if (pos + sizeof(T) > buf.size()) return false;
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(pos), buf.begin() + static_cast<std::ptrdiff_t>(pos + sizeof(T)),
            reinterpret_cast<char*>(&v));
  pos += sizeof(T);
  return true;
}

// FNV-1a
std::uint64_t checksum(const char* data, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ull;
  }
  return h;
}

void sort_levels(EdSpectrum& sp) {
  sp.levels.clear();
  for (std::size_t b = 0; b < sp.blocks.size(); ++b) {
    const auto& blk = sp.blocks[b];
    for (Eigen::Index c = 0; c < blk.energies.size(); ++c) {
      sp.levels.push_back({blk.energies(c), blk.j, static_cast<int>(b), static_cast<int>(c)});
    }
  }
  std::stable_sort(sp.levels.begin(), sp.levels.end(), [](const EdLevel& a, const EdLevel& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.j < b.j;
  });
}

}  // namespace

std::vector<std::uint32_t> sector_basis(int M, int sz) {
  check_size(M, sz);
  const int ups = M / 2 + sz;
  std::vector<std::uint32_t> basis;
  for (std::uint32_t s = 0; s < (1u << M); ++s) {
    if (std::popcount(s) == ups) basis.push_back(s);
  }
  return basis;
}

Eigen::MatrixXd build_hamiltonian(int M, int sz) {
  const auto basis = sector_basis(M, sz);
  const auto idx = index_of(basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 0;
    apply_h(basis[static_cast<std::size_t>(i)], M, diag, [&](std::uint32_t t) { h(idx.at(t), i) += 2.0; });
    h(i, i) += diag;
  }
  return h;
}

double EdSpectrum::momentum(const EdLevel& level) const { return 2.0 * M_PI * level.j / M; }

Eigen::VectorXcd EdSpectrum::full_vector(const EdLevel& level) const {
  const auto basis = sector_basis(M, sz);
  const auto idx = index_of(basis);
  const auto& blk = blocks[static_cast<std::size_t>(level.block)];
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t r = 0; r < blk.reps.size(); ++r) {
    const int p = blk.periods[r];
    const cd w = blk.vectors(static_cast<Eigen::Index>(r), level.column) / std::sqrt(static_cast<double>(p));
    std::uint32_t s = blk.reps[r];
    for (int n = 0; n < p; ++n) {
      v(idx.at(s)) += std::conj(phase(blk.j, n, M)) * w;
      s = rotate(s, M);
    }
  }
  return v;
}

EdSpectrum ed_spectrum(int M, int sz) {
  const auto basis = sector_basis(M, sz);
  std::vector<std::uint32_t> reps;
  std::vector<int> periods;
  for (auto s : basis) {
    if (orbit_of(s, M).rep == s) {
      reps.push_back(s);
      periods.push_back(period_of(s, M));
    }
  }
  EdSpectrum sp;
  sp.M = M;
  sp.sz = sz;
  for (int j = 0; j < M; ++j) {
    MomentumBlock blk;
    blk.j = j;
    std::unordered_map<std::uint32_t, int> local;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if ((j * periods[r]) % M != 0) continue;
      local.emplace(reps[r], static_cast<int>(blk.reps.size()));
      blk.reps.push_back(reps[r]);
      blk.periods.push_back(periods[r]);
    }
    const auto d = static_cast<Eigen::Index>(blk.reps.size());
    if (d == 0) continue;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const double pr = blk.periods[static_cast<std::size_t>(r)];
      double diag = 0;
      apply_h(blk.reps[static_cast<std::size_t>(r)], M, diag, [&](std::uint32_t t) {
        Orbit o = orbit_of(t, M);
        auto it = local.find(o.rep);
        if (it == local.end()) return;  // orbit incompatible with this momentum
        const double pt = blk.periods[static_cast<std::size_t>(it->second)];
        h(it->second, r) += 2.0 * phase(j, o.shift, M) * std::sqrt(pr / pt);
      });
      h(r, r) += diag;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "block eigensolver failed");
    blk.energies = solver.eigenvalues();
    blk.vectors = solver.eigenvectors();
    sp.blocks.push_back(std::move(blk));
  }
  sort_levels(sp);
  return sp;
}

EdChecks check_spectrum(const EdSpectrum& sp) {
  EdChecks c;
  const Eigen::MatrixXd h = build_hamiltonian(sp.M, sp.sz);
  const auto n = static_cast<Eigen::Index>(sp.levels.size());
  Eigen::MatrixXcd all(h.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& lv = sp.levels[static_cast<std::size_t>(i)];
    all.col(i) = sp.full_vector(lv);
    c.residual = std::max(c.residual, (h * all.col(i) - lv.energy * all.col(i)).cwiseAbs().maxCoeff());
  }
  Eigen::MatrixXcd gram = all.adjoint() * all;
  gram -= Eigen::MatrixXcd::Identity(n, n);
  c.orthonormality = gram.cwiseAbs().maxCoeff();
  return c;
}

EdLevel ed_ground_level(const EdSpectrum& sp) {
  if (sp.levels.empty()) throw Error(ErrorKind::NoMatch, "empty spectrum");
  if (sp.levels.size() > 1 && std::abs(sp.levels[1].energy - sp.levels[0].energy) < 1e-8) {
    throw Error(ErrorKind::DegenerateAmbiguity, "degenerate lowest level");
  }
  return sp.levels[0];
}

EdFormFactor ff_ed(const EdSpectrum& sp, double energy, std::optional<int> j, double tol) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < sp.levels.size(); ++i) {
    const auto& lv = sp.levels[i];
    if (std::abs(lv.energy - energy) > tol) continue;
    if (j && lv.j != ((*j % sp.M) + sp.M) % sp.M) continue;
    hits.push_back(i);
  }
  if (hits.empty()) throw Error(ErrorKind::NoMatch, "no level at energy " + std::to_string(energy));
  for (auto i : hits) {
    if (sp.levels[i].j != sp.levels[hits[0]].j) {
      throw Error(ErrorKind::DegenerateAmbiguity, "energy " + std::to_string(energy) + " occurs at several momenta");
    }
  }
  EdFormFactor out;
  out.level = sp.levels[hits[0]];
  out.degeneracy = static_cast<int>(hits.size());
  double lo = 0;
  double hi = 0;
  double sum = 0;
  for (int m = 0; m < sp.M; ++m) {
    const auto amp = amplitudes(sp, m);
    double v = 0;
    for (auto i : hits) v += std::norm(amp[i]);
    if (m == 0 || v < lo) lo = v;
    if (m == 0 || v > hi) hi = v;
    sum += v;
  }
  out.value = sum / sp.M;
  out.spread = hi - lo;
  return out;
}

std::vector<double> ff_ed_all(const EdSpectrum& sp, int site) {
  std::vector<double> out;
  for (const auto& a : amplitudes(sp, site)) out.push_back(std::norm(a));
  return out;
}

double sum_rule(const EdSpectrum& sp, int site) {
  double s = 0;
  for (double v : ff_ed_all(sp, site)) s += v;
  return s;
}

int bethe_momentum_index(const BetheState& state) {
  const double p = momentum(state).to_double();
  const int M = state.M();
  int j = static_cast<int>(std::lround(p * M / (2.0 * M_PI)));
  return ((j % M) + M) % M;
}

std::size_t match_state(const EdSpectrum& sp, const BetheState& state, double tol) {
  const double e = energy(state).to_double();
  const double p = momentum(state).to_double();
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < sp.levels.size(); ++i) {
    const auto& lv = sp.levels[i];
    if (std::abs(lv.energy - e) > tol) continue;
    double dp = std::remainder(sp.momentum(lv) - p, 2.0 * M_PI);
    if (std::abs(dp) > tol) continue;
    if (found) throw Error(ErrorKind::DegenerateAmbiguity, "several levels match the Bethe state");
    found = i;
  }
  if (!found) throw Error(ErrorKind::NoMatch, "no level matches the Bethe state");
  return *found;
}

int count_levels(const EdSpectrum& sp, double energy, int j, double tol) {
  int n = 0;
  for (const auto& lv : sp.levels) {
    if (std::abs(lv.energy - energy) <= tol && lv.j == j) ++n;
  }
  return n;
}

void save_spectrum(const EdSpectrum& sp, const std::string& path) {
  std::vector<char> buf;
  put(buf, kMagic);
  put(buf, kVersion);
  put(buf, static_cast<std::int32_t>(sp.M));
  put(buf, static_cast<std::int32_t>(sp.sz));
  put(buf, static_cast<std::uint32_t>(sp.blocks.size()));
  for (const auto& blk : sp.blocks) {
    put(buf, static_cast<std::int32_t>(blk.j));
    put(buf, static_cast<std::uint32_t>(blk.reps.size()));
    for (std::size_t r = 0; r < blk.reps.size(); ++r) {
      put(buf, blk.reps[r]);
      put(buf, static_cast<std::int32_t>(blk.periods[r]));
    }
    for (Eigen::Index i = 0; i < blk.energies.size(); ++i) put(buf, blk.energies(i));
    for (Eigen::Index i = 0; i < blk.vectors.size(); ++i) put(buf, blk.vectors.data()[i]);
  }
  const std::uint64_t sum = checksum(buf.data(), buf.size());
  put(buf, sum);
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<EdSpectrum> load_spectrum(const std::string& path, int M, int sz) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof(std::uint64_t)) return std::nullopt;
  const std::size_t body = buf.size() - sizeof(std::uint64_t);
  std::uint64_t stored = 0;
  std::size_t tail = body;
  get(buf, tail, stored);
  if (stored != checksum(buf.data(), body)) return std::nullopt;
  buf.resize(body);

  std::size_t pos = 0;
  std::uint32_t magic = 0, version = 0, nblocks = 0;
  std::int32_t m = 0, s = 0;
  if (!get(buf, pos, magic) || magic != kMagic || !get(buf, pos, version) || version != kVersion) return std::nullopt;
  if (!get(buf, pos, m) || !get(buf, pos, s) || m != M || s != sz || !get(buf, pos, nblocks)) return std::nullopt;
  EdSpectrum sp;
  sp.M = M;
  sp.sz = sz;
  for (std::uint32_t b = 0; b < nblocks; ++b) {
    MomentumBlock blk;
    std::int32_t j = 0;
    std::uint32_t d = 0;
    if (!get(buf, pos, j) || !get(buf, pos, d)) return std::nullopt;
    blk.j = j;
    for (std::uint32_t r = 0; r < d; ++r) {
      std::uint32_t rep = 0;
      std::int32_t per = 0;
      if (!get(buf, pos, rep) || !get(buf, pos, per)) return std::nullopt;
      blk.reps.push_back(rep);
      blk.periods.push_back(per);
    }
    const auto n = static_cast<Eigen::Index>(d);
    blk.energies.resize(n);
    blk.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!get(buf, pos, blk.energies(i))) return std::nullopt;
    }
    for (Eigen::Index i = 0; i < n * n; ++i) {
      if (!get(buf, pos, blk.vectors.data()[i])) return std::nullopt;
    }
    sp.blocks.push_back(std::move(blk));
  }
  if (pos != buf.size()) return std::nullopt;
  sort_levels(sp);
  return sp;
}

EdSpectrum cached_spectrum(int M, int sz, const std::string& dir) {
  check_size(M, sz);
  const std::string path = dir + "/ed_M" + std::to_string(M) + "_sz" + std::to_string(sz) + ".bin";
  if (auto sp = load_spectrum(path, M, sz)) return *sp;
  EdSpectrum sp = ed_spectrum(M, sz);
  save_spectrum(sp, path);
  return sp;
}

}  // namespace spinon

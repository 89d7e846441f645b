#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinon/bethe/bethe.hpp"

namespace spinon {

/// Dense Hamiltonian sum_m [sx sx + sy sy + (sz sz - 1)] on the S^z sector, with
/// basis states ordered by increasing bit mask (bit m set = spin up at site m).
Eigen::MatrixXd build_hamiltonian(int M, int sz);

/// Bit masks of the S^z sector in the order used by build_hamiltonian.
std::vector<std::uint32_t> sector_basis(int M, int sz);

/// Eigenstates of one translation sector, T psi = exp(2 pi i j / M) psi.
struct MomentumBlock {
  int j = 0;
  std::vector<std::uint32_t> reps;  // orbit representatives (smallest mask)
  std::vector<int> periods;
  Eigen::VectorXd energies;         // ascending
  Eigen::MatrixXcd vectors;         // columns over the orbit-state basis
};

struct EdLevel {
  double energy;
  int j;        // momentum index
  int block;    // index into EdSpectrum::blocks
  int column;   // eigenvector column within the block
};

struct EdSpectrum {
  int M = 0;
  int sz = 0;
  std::vector<MomentumBlock> blocks;
  std::vector<EdLevel> levels;  // sorted by energy, then momentum index

  std::size_t dimension() const { return levels.size(); }
  double momentum(const EdLevel& level) const;
  /// Eigenvector of a level expanded on sector_basis(M, sz).
  Eigen::VectorXcd full_vector(const EdLevel& level) const;
};

/// Full spectrum by diagonalising each momentum block. SizeLimit above M = 14.
EdSpectrum ed_spectrum(int M, int sz);

/// Worst |<a|b> - delta_ab| and worst |H v - E v| over the spectrum.
struct EdChecks {
  double orthonormality = 0;
  double residual = 0;
};
EdChecks check_spectrum(const EdSpectrum& spectrum);

/// Lowest S^z = 0 level; DegenerateAmbiguity if it is not unique.
EdLevel ed_ground_level(const EdSpectrum& spectrum);

struct EdFormFactor {
  double value = 0;   // mean over sites of the summed |<e|sz_m|g>|^2 in the matched subspace
  double spread = 0;  // max - min over sites
  int degeneracy = 0; // levels in the matched (energy, momentum) subspace
  EdLevel level{};
};

/// |<e|sz_m|g>|^2 for the S^z = 0 level at `energy`. When `j` is given the
/// match is restricted to that momentum; levels equal in both are summed.
/// NoMatch when nothing lies within tol; DegenerateAmbiguity when the energy
/// alone picks several momenta.
EdFormFactor ff_ed(const EdSpectrum& spectrum, double energy, std::optional<int> j = std::nullopt,
                   double tol = 1e-8);

/// |<e|sz_m|g>|^2 for every S^z = 0 level, in levels order, at site m.
std::vector<double> ff_ed_all(const EdSpectrum& spectrum, int site = 0);

/// Sum over all levels of |<e|sz_m|g>|^2 (1 for a complete basis).
double sum_rule(const EdSpectrum& spectrum, int site = 0);

/// Momentum index of a Bethe state, round(M P / 2 pi) mod M.
int bethe_momentum_index(const BetheState& state);

/// Index into spectrum.levels matching the state's energy and momentum within tol.
std::size_t match_state(const EdSpectrum& spectrum, const BetheState& state, double tol = 1e-8);

/// Number of levels of `spectrum` at (energy, momentum) within tol.
int count_levels(const EdSpectrum& spectrum, double energy, int j, double tol = 1e-8);

/// Binary spectrum cache with a trailing checksum. load returns nullopt on a
/// missing, mismatched or corrupted file.
void save_spectrum(const EdSpectrum& spectrum, const std::string& path);
std::optional<EdSpectrum> load_spectrum(const std::string& path, int M, int sz);
EdSpectrum cached_spectrum(int M, int sz, const std::string& dir);

}  // namespace spinon

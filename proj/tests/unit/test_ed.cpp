#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "spinon/ed/ed.hpp"
#include "spinon/formfactor/finite.hpp"
#include "spinon/numeric/error.hpp"

using namespace spinon;

namespace {

const EdSpectrum& spectrum8() {
  static const EdSpectrum sp = ed_spectrum(8, 0);
  return sp;
}

}  // namespace

TEST_SUITE("ed") {
  TEST_CASE("sector sizes and the ferromagnetic state") {
    CHECK(sector_basis(4, 0).size() == 6);
    CHECK(sector_basis(8, 0).size() == 70);
    EdSpectrum up = ed_spectrum(4, 2);
    REQUIRE(up.dimension() == 1);
    CHECK(std::abs(up.levels[0].energy) < 1e-14);
    Eigen::MatrixXd h = build_hamiltonian(4, 0);
    CHECK((h - h.transpose()).norm() < 1e-14);
  }

  TEST_CASE("size and argument limits") {
    try {
      ed_spectrum(16, 0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SizeLimit);
    }
    CHECK_THROWS_AS(ed_spectrum(7, 0), Error);
  }

  TEST_CASE("eigen-decomposition checks") {
    EdChecks c = check_spectrum(spectrum8());
    CHECK(c.orthonormality < 1e-12);
    CHECK(c.residual < 1e-12);
    CHECK(spectrum8().dimension() == 70);
  }

  TEST_CASE("ground state matches the Bethe solution") {
    EdLevel gl = ed_ground_level(spectrum8());
    BetheState g = solve_ground(ChainSpec(8));
    CHECK(std::abs(gl.energy - energy(g).to_double()) < 1e-12);
    CHECK(gl.j == bethe_momentum_index(g));
    // <g|sz_m|g> vanishes: the ground state carries no level of its own in the sum
    std::vector<double> all = ff_ed_all(spectrum8());
    std::size_t gi = match_state(spectrum8(), g);
    CHECK(all[gi] < 1e-24);
  }

  TEST_CASE("sum rule") {
    for (int site : {0, 3}) CHECK(std::abs(sum_rule(spectrum8(), site) - 1.0) < 1e-12);
  }

  TEST_CASE("triplets appear once in each of the three S^z sectors") {
    ChainSpec chain(8);
    BetheState e = solve_two_spinon_triplet(chain, 2, 4);
    int j = bethe_momentum_index(e);
    double en = energy(e).to_double();
    EdSpectrum m1 = ed_spectrum(8, -1);
    EdSpectrum p1 = ed_spectrum(8, 1);
    EdSpectrum p2 = ed_spectrum(8, 2);
    CHECK(count_levels(spectrum8(), en, j) == 1);
    CHECK(count_levels(m1, en, j) == 1);
    CHECK(count_levels(p1, en, j) == 1);
    CHECK(count_levels(p2, en, j) == 0);
  }

  TEST_CASE("every two-spinon triplet matches a distinct level") {
    ChainSpec chain(8);
    std::set<std::size_t> seen;
    int pairs = 0;
    for (int a = 1; a <= 5; ++a) {
      for (int b = a + 1; b <= 5; ++b) {
        BetheState e = solve_two_spinon_triplet(chain, a, b);
        seen.insert(match_state(spectrum8(), e));
        ++pairs;
      }
    }
    CHECK(pairs == 10);
    CHECK(seen.size() == 10);
  }

  TEST_CASE("form factor lookup") {
    BetheState e = solve_two_spinon_triplet(ChainSpec(8), 1, 5);
    EdFormFactor f = ff_ed(spectrum8(), energy(e).to_double(), bethe_momentum_index(e));
    CHECK(f.degeneracy == 1);
    CHECK(f.spread < 1e-12);
    CHECK(f.value == doctest::Approx(0.389023236251246).epsilon(1e-12));
    try {
      ff_ed(spectrum8(), 123.0);
      FAIL("expected an error");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::NoMatch);
    }
  }

  TEST_CASE("cache round trip and corruption") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "spinon_ed_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string path = (dir / "s.bin").string();
    save_spectrum(spectrum8(), path);
    auto back = load_spectrum(path, 8, 0);
    REQUIRE(back.has_value());
    CHECK(back->dimension() == spectrum8().dimension());
    CHECK(std::abs(sum_rule(*back) - 1.0) < 1e-12);
    CHECK_FALSE(load_spectrum(path, 10, 0).has_value());
    {
      std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
      f.seekp(40);
      char c = 0x5a;
      f.write(&c, 1);
    }
    CHECK_FALSE(load_spectrum(path, 8, 0).has_value());
    CHECK_FALSE(load_spectrum((dir / "missing.bin").string(), 8, 0).has_value());
    EdSpectrum again = cached_spectrum(8, 0, dir.string());
    CHECK(again.dimension() == 70);
    CHECK(fs::exists(dir / "ed_M8_sz0.bin"));
    fs::remove_all(dir);
  }

  TEST_CASE("two-spinon triplets carry most of the weight at M = 12") {
    EdSpectrum sp = ed_spectrum(12, 0);
    ChainSpec chain(12);
    std::vector<double> all = ff_ed_all(sp);
    double share = 0;
    for (int a = 1; a <= 7; ++a)
      for (int b = a + 1; b <= 7; ++b) share += all[match_state(sp, solve_two_spinon_triplet(chain, a, b))];
    CHECK(share > 0.5);
    CHECK(share < 1.0);
  }
}

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"

namespace soqft::testing {

inline std::string data_path(const std::string& name) { return std::string(SOQFT_DATA_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(SOQFT_FIXTURE_DIR) + "/" + name; }

inline const ForceField& synthetic() {
  static const ForceField ff = load_forcefield(data_path("synthetic_h2o_like.ff"));
  return ff;
}

/// The default 16^3 grid with L = 10.
inline GridSpec water_grid() { return make_grid(4, 3, 10.0); }

/// Frozen values for the synthetic field on the default grid. Each one is
/// recomputed from dense diagonalization in oracle_test before being relied on
/// elsewhere.
namespace frozen {
inline constexpr double E0 = 4697.913086293;
inline constexpr double nu2 = 1619.13031894;       // eigenstate 1, bend fundamental
inline constexpr double two_nu2 = 3232.280771015;  // eigenstate 2
inline constexpr double nu1 = 3836.816558147;      // eigenstate 3, symmetric stretch
inline constexpr double nu3 = 3898.639336944;      // eigenstate 4, antisymmetric stretch
inline constexpr double harmonic_overlap = 0.9953002650355;
}  // namespace frozen

/// Deterministic generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  /// Normalized complex state with Gaussian components.
  Wavefunction state(const GridSpec& g) {
    Wavefunction psi(g);
    for (auto& a : psi.amplitudes) a = cplx(normal(), normal());
    psi.normalize();
    return psi;
  }

  /// Normalized non-negative real vector of length 2^n.
  std::vector<double> nonnegative(int n) {
    std::vector<double> v(std::size_t{1} << n);
    double s = 0.0;
    for (auto& x : v) {
      x = integer(0, 4) == 0 ? 0.0 : uniform(0.0, 1.0);
      s += x * x;
    }
    if (s == 0.0) {
      v[0] = 1.0;
      s = 1.0;
    }
    for (auto& x : v) x /= std::sqrt(s);
    return v;
  }

  /// Sorted index key of the given order over `modes` modes.
  IndexKey key(int order, int modes) {
    IndexKey k;
    for (int i = 0; i < order; ++i) k.push_back(integer(0, modes - 1));
    return canonical_key(k);
  }

  /// Random valid force field with bounded diagonal quartics and a dipole.
  ForceField forcefield(int modes) {
    ForceField ff;
    ff.name = "generated";
    ff.n_modes = modes;
    for (int i = 0; i < modes; ++i) ff.omega.push_back(uniform(800.0, 4000.0));
    const int n_cubic = integer(0, 5), n_quartic = integer(0, 5), n_dipole = integer(1, 6);
    for (int t = 0; t < n_cubic; ++t) ff.cubic[key(3, modes)] = uniform(-80.0, 80.0);
    for (int t = 0; t < n_quartic; ++t) ff.quartic[key(4, modes)] = uniform(-10.0, 10.0);
    for (int i = 0; i < modes; ++i) ff.quartic[{i, i, i, i}] = uniform(1.0, 20.0);
    const char axes[] = {'x', 'y', 'z'};
    for (int t = 0; t < n_dipole; ++t) {
      const int order = integer(1, 3);
      ff.dipole[axes[integer(0, 2)]][key(order, modes)] = uniform(-0.3, 0.3);
    }
    ff.dipole['z'][{0}] = uniform(0.05, 0.3);
    return ff;
  }

 private:
  std::mt19937_64 rng_;
};

/// Direct product of grid coordinates for an index key.
inline double monomial(const GridSpec& g, std::size_t flat, const IndexKey& key) {
  double v = 1.0;
  for (int r : key) v *= g.coordinate(g.digit(flat, r));
  return v;
}

}  // namespace soqft::testing

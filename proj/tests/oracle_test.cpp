#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "soqft/dipole_encoding.hpp"
#include "soqft/hamiltonian.hpp"
#include "soqft/oracle.hpp"
#include "soqft/propagator.hpp"
#include "soqft/state_prep.hpp"
#include "support.hpp"

namespace soqft {
namespace {

namespace frozen = testing::frozen;

const Eigenpairs& synthetic_eig() {
  static const Eigenpairs eig = solve(testing::synthetic(), testing::water_grid());
  return eig;
}

double strength_of(const std::vector<Stick>& sticks, std::size_t state) {
  for (const auto& s : sticks)
    if (s.state == state) return s.strength;
  return 0.0;
}

TEST(DenseHamiltonian, SmallHarmonicStructure) {
  const ForceField ff = parse_forcefield("modes 1\nomega 0 1000\nmu z 0 1\n");
  const GridSpec g = make_grid(2, 1, 4.0);
  const DenseMatrix H = dense_hamiltonian(ff, g);
  ASSERT_EQ(H.dim, 4u);
  const auto K = kinetic_on_grid(ff.omega, g);
  double mean_k = 0.0;
  for (double k : K.per_mode[0]) mean_k += k / 4.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double q = g.coordinate(i);
    // The diagonal of F^dagger K F is the mean kinetic energy.
    EXPECT_NEAR(H(i, i), 500.0 * q * q + mean_k, 1e-9);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(H(i, j), H(j, i), 1e-12);
  }
  // The off-diagonal kinetic block depends only on x - y modulo N.
  EXPECT_NEAR(H(0, 1), H(1, 2), 1e-12);
  EXPECT_NEAR(H(0, 1), H(3, 0), 1e-12);
}

TEST(DenseHamiltonian, SymmetricOnSyntheticGrid) {
  const DenseMatrix H = dense_hamiltonian(testing::synthetic(), make_grid(3, 3, 10.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < H.dim; ++i)
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(H(i, j) - H(j, i)));
  EXPECT_LT(worst, 1e-10);
}

TEST(DenseHamiltonian, SizeCap) {
  EXPECT_THROW(dense_hamiltonian(testing::synthetic(), make_grid(5, 3, 10.0)), std::invalid_argument);
  EXPECT_THROW(solve(testing::synthetic(), testing::water_grid(), 1000), std::invalid_argument);
}

TEST(Solve, HarmonicLadder) {
  const ForceField ff = parse_forcefield("modes 1\nomega 0 1600\nmu z 0 1\n");
  const Eigenpairs eig = solve(ff, make_grid(6, 1, 14.0));
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(eig.values[k], 1600.0 * (k + 0.5), 1e-6 * 1600.0 * (k + 0.5)) << k;
}

TEST(Solve, OrthonormalAscendingEigenvectors) {
  const Eigenpairs& eig = synthetic_eig();
  for (std::size_t k = 1; k < eig.values.size(); ++k) ASSERT_GE(eig.values[k], eig.values[k - 1]);
  double worst = 0.0;
  for (std::size_t a = 0; a < 12; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      const cplx ip = inner_product(eigenstate(eig, a), eigenstate(eig, b));
      worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  EXPECT_LT(worst, 1e-10);
  EXPECT_THROW(eigenstate(eig, eig.values.size()), std::out_of_range);
}

TEST(Frozen, SyntheticEnergies) {
  const Eigenpairs& eig = synthetic_eig();
  EXPECT_NEAR(eig.values[0], frozen::E0, 1e-6);
  EXPECT_NEAR(eig.values[1] - eig.values[0], frozen::nu2, 1e-6);
  EXPECT_NEAR(eig.values[2] - eig.values[0], frozen::two_nu2, 1e-6);
  EXPECT_NEAR(eig.values[3] - eig.values[0], frozen::nu1, 1e-6);
  EXPECT_NEAR(eig.values[4] - eig.values[0], frozen::nu3, 1e-6);
  EXPECT_NEAR(eig.values[5] - eig.values[0], 4840.208553344, 1e-6);
  EXPECT_NEAR(eig.values[6] - eig.values[0], 5444.456366575, 1e-6);
  EXPECT_NEAR(eig.values[7] - eig.values[0], 5478.652036708, 1e-6);
}

TEST(Frozen, HarmonicOverlapAndPotentialRange) {
  const GridSpec g = testing::water_grid();
  EXPECT_NEAR(std::abs(inner_product(harmonic_ground_state(g), eigenstate(synthetic_eig(), 0))), frozen::harmonic_overlap,
              1e-10);
  const auto V = potential_on_grid(testing::synthetic(), g);
  EXPECT_EQ(*std::min_element(V.values.begin(), V.values.end()), 0.0);
  EXPECT_NEAR(*std::max_element(V.values.begin(), V.values.end()), 187750.0, 1e-6);
  EXPECT_NEAR(expectation_energy(harmonic_ground_state(g), testing::synthetic()), 4719.999999825, 1e-6);
}

TEST(Frozen, SyntheticSticks) {
  const Eigenpairs& eig = synthetic_eig();
  const auto x = stick_spectrum(eig, testing::synthetic(), 'x', 3, 1e-6);
  const auto z = stick_spectrum(eig, testing::synthetic(), 'z', 3, 1e-6);
  EXPECT_NEAR(strength_of(x, 4), 0.003727902965, 1e-12);
  EXPECT_NEAR(strength_of(x, 7), 4.781301338e-05, 1e-13);
  EXPECT_NEAR(strength_of(z, 1), 0.01878997103195, 1e-12);
  EXPECT_NEAR(strength_of(z, 2), 1.013246471e-04, 1e-13);
  EXPECT_NEAR(strength_of(z, 3), 4.596129979e-04, 1e-13);
  const auto& c = units::ConstantsBundle{};
  EXPECT_NEAR(c.stick_intensity_km_per_mol(frozen::nu3, strength_of(x, 4)), 36.431, 1e-3);
  EXPECT_NEAR(c.stick_intensity_km_per_mol(frozen::nu2, strength_of(z, 1)), 76.261, 1e-3);
  EXPECT_NEAR(c.stick_intensity_km_per_mol(frozen::nu1, strength_of(z, 3)), 4.4203, 1e-4);
  for (const auto& s : x) EXPECT_NEAR(s.energy, eig.values[s.state] - eig.values[0], 1e-9);
}

// Harmonic oscillator with a linear dipole: only the fundamental of each mode
// is bright, with strength mu_i^2 / 2.
TEST(SelectionRule, HarmonicLinearDipole) {
  const ForceField ff = parse_forcefield("modes 2\nomega 0 1600\nomega 1 3700\nmu z 0 0.2\nmu z 1 -0.1\n");
  const GridSpec g = make_grid(4, 2, 10.0);
  const Eigenpairs eig = solve(ff, g);
  const auto sticks = stick_spectrum(eig, ff, 'z', 1, 1e-8);
  ASSERT_EQ(sticks.size(), 2u);
  EXPECT_NEAR(sticks[0].energy, 1600.0, 1e-3);
  EXPECT_NEAR(sticks[0].strength, 0.02, 1e-8);
  EXPECT_NEAR(sticks[1].energy, 3700.0, 1e-3);
  EXPECT_NEAR(sticks[1].strength, 0.005, 1e-8);
}

TEST(SelectionRule, AnharmonicityBrightensOvertones) {
  ForceField linear = testing::synthetic();
  linear.dipole['z'] = {{{1}, 0.194}};
  const auto sticks = stick_spectrum(synthetic_eig(), linear, 'z', 1, 1e-10);
  EXPECT_GT(strength_of(sticks, 2), 1e-7);
  ForceField harmonic = linear;
  harmonic.cubic.clear();
  harmonic.quartic.clear();
  const Eigenpairs heig = solve(harmonic, testing::water_grid());
  const auto hs = stick_spectrum(heig, harmonic, 'z', 1, 1e-10);
  ASSERT_EQ(hs.size(), 1u);
  EXPECT_NEAR(hs[0].energy, 1650.0, 1e-3);
}

TEST(SumRule, StrengthsAddToSecondMoment) {
  const Eigenpairs& eig = synthetic_eig();
  for (char axis : {'x', 'z'}) {
    const auto s = transition_strengths(eig, testing::synthetic(), axis, 3);
    ASSERT_EQ(s.size(), eig.values.size());
    double total = 0.0;
    for (double v : s) total += v;
    const auto mu = dipole_on_grid(testing::synthetic(), testing::water_grid(), axis, 3);
    const Wavefunction psi = eigenstate(eig, 0);
    double second = 0.0;
    for (std::size_t i = 0; i < mu.values.size(); ++i) second += mu.values[i] * mu.values[i] * std::norm(psi.amplitudes[i]);
    EXPECT_NEAR(total, second, 1e-10) << axis;
  }
}

TEST(EvolveExact, MatchesSplitOperatorAfterHundredSteps) {
  const Eigenpairs& eig = synthetic_eig();
  const GridSpec g = testing::water_grid();
  const DipoleState mu = apply_dipole_exact(eigenstate(eig, 0), testing::synthetic(), 'z', 3);
  const double dt = 3950.0 / 60000.0;
  Wavefunction psi = mu.state;
  SplitOperatorPropagator(testing::synthetic(), g, dt, Splitting::kinetic_half).evolve(psi, 100);
  const Wavefunction exact = evolve_exact(eig, mu.state, 100 * dt);
  EXPECT_GT(std::norm(inner_product(exact, psi)), 1.0 - 1e-6);
  EXPECT_NEAR(exact.norm_squared(), 1.0, 1e-12);
}

TEST(EvolveExact, EigenstatePhase) {
  const Eigenpairs& eig = synthetic_eig();
  const Wavefunction psi = eigenstate(eig, 3);
  const Wavefunction out = evolve_exact(eig, psi, 12.5);
  const cplx expected = std::exp(cplx(0.0, -units::two_pi_c * eig.values[3] * 12.5));
  EXPECT_NEAR(std::abs(inner_product(psi, out) - expected), 0.0, 1e-10);
  Wavefunction mom = psi;
  fourier_transform(mom, Space::momentum);
  EXPECT_THROW(evolve_exact(eig, mom, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace soqft

#include <gtest/gtest.h>

#include <cmath>

#include "soqft/dipole_encoding.hpp"
#include "soqft/hamiltonian.hpp"
#include "soqft/oracle.hpp"
#include "soqft/propagator.hpp"
#include "soqft/state_prep.hpp"
#include "soqft/units.hpp"
#include "support.hpp"

namespace soqft {
namespace {

using testing::Gen;

ForceField small_field() {
  return parse_forcefield(
      "modes 2\nomega 0 1600\nomega 1 3700\ncubic 0 0 1 -60\ncubic 0 1 1 -90\n"
      "quartic 0 0 0 0 8\nquartic 1 1 1 1 4\nquartic 0 0 1 1 -5\nmu z 0 0.2\nmu z 1 0.05\nmu z 0 1 0.01\n");
}

GridSpec small_grid() { return make_grid(4, 2, 10.0); }

ForceField harmonic_synthetic() {
  ForceField ff = testing::synthetic();
  ff.cubic.clear();
  ff.quartic.clear();
  return ff;
}

double distance(const Wavefunction& a, const Wavefunction& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) s += std::norm(a.amplitudes[i] - b.amplitudes[i]);
  return std::sqrt(s);
}

TEST(PropagationConfig, Validation) {
  EXPECT_NO_THROW((PropagationConfig{3950.0, 60000, Splitting::kinetic_half, 10}.validate()));
  EXPECT_DOUBLE_EQ((PropagationConfig{3950.0, 60000}.dt()), 3950.0 / 60000.0);
  EXPECT_THROW((PropagationConfig{0.0, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((PropagationConfig{10.0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((PropagationConfig{10.0, 10, Splitting::kinetic_half, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((PropagationConfig{10.0, 10, Splitting::kinetic_half, 3}.validate()), std::invalid_argument);
}

TEST(Step, NormConservedOverLongRun) {
  Gen gen(501);
  const GridSpec g = testing::water_grid();
  Wavefunction psi = gen.state(g);
  SplitOperatorPropagator prop(testing::synthetic(), g, 3950.0 / 60000.0, Splitting::kinetic_half);
  prop.evolve(psi, 20000);
  EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-10);
}

TEST(Step, TimeReversal) {
  Gen gen(502);
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  for (Splitting s : {Splitting::kinetic_half, Splitting::potential_half}) {
    const Wavefunction psi0 = gen.state(g);
    Wavefunction psi = psi0;
    for (int i = 0; i < 200; ++i) psi = step(psi, ff, g, 0.05, s);
    for (int i = 0; i < 200; ++i) psi = step(psi, ff, g, -0.05, s);
    EXPECT_GT(std::abs(inner_product(psi0, psi)), 1.0 - 1e-8);
  }
}

TEST(Step, MergedEvolutionMatchesRepeatedSteps) {
  Gen gen(503);
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  for (Splitting s : {Splitting::kinetic_half, Splitting::potential_half}) {
    const Wavefunction psi0 = gen.state(g);
    Wavefunction a = psi0, b = psi0;
    for (int i = 0; i < 50; ++i) a = step(a, ff, g, 0.07, s);
    SplitOperatorPropagator(ff, g, 0.07, s).evolve(b, 50);
    EXPECT_LT(distance(a, b), 1e-12);
  }
}

TEST(Step, HarmonicGroundStateIsStationary) {
  const GridSpec g = testing::water_grid();
  const ForceField ff = harmonic_synthetic();
  const Wavefunction psi0 = harmonic_ground_state(g);
  const double E = expectation_energy(psi0, ff);
  Wavefunction psi = psi0;
  const double dt = 0.00658;
  const long n = 10000;
  SplitOperatorPropagator(ff, g, dt, Splitting::kinetic_half).evolve(psi, n);
  const cplx expected = std::exp(cplx(0.0, -units::two_pi_c * E * dt * n));
  EXPECT_GT(std::abs(inner_product(psi0, psi)), 1.0 - 1e-6);
  EXPECT_LT(std::abs(inner_product(psi0, psi) - expected), 1e-4);
}

// The one-step error against the exact propagator shrinks as dt^3.
TEST(Step, LocalErrorIsThirdOrder) {
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  const Eigenpairs eig = solve(ff, g);
  const Wavefunction psi = eigenstate(eig, 3);
  Wavefunction mixed = psi;
  const Wavefunction other = eigenstate(eig, 0);
  for (std::size_t i = 0; i < mixed.amplitudes.size(); ++i) mixed.amplitudes[i] += other.amplitudes[i];
  mixed.normalize();
  std::vector<double> err;
  for (double dt : {0.04, 0.02, 0.01}) err.push_back(distance(step(mixed, ff, g, dt, Splitting::kinetic_half), evolve_exact(eig, mixed, dt)));
  const double slope1 = std::log2(err[0] / err[1]), slope2 = std::log2(err[1] / err[2]);
  EXPECT_NEAR(slope1, 3.0, 0.2);
  EXPECT_NEAR(slope2, 3.0, 0.2);
}

// A(T) at fixed T converges as dt^2 against a dt/8 reference.
TEST(Propagate, GlobalErrorIsSecondOrder) {
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  const DipoleState mu = apply_dipole_exact(imaginary_time_evolve(ff, g).state, ff, 'z', 3);
  const double T = 50.0;
  const long base = 500;
  auto final_value = [&](long n_t) {
    return propagate(mu.state, mu.norm_mu_sq, 0.0, 'z', {T, n_t, Splitting::kinetic_half, n_t}, ff, g).values.back();
  };
  const cplx ref = final_value(8 * base);
  const double e1 = std::abs(final_value(base) - ref), e2 = std::abs(final_value(2 * base) - ref);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.2) << e1 << " " << e2;
}

// Largest relative deviation of <H> from its initial value, sampled 40 times over a run.
double energy_deviation(const Wavefunction& start, const ForceField& ff, const GridSpec& g, double T, long n_t) {
  Wavefunction psi = start;
  const double e0 = expectation_energy(psi, ff);
  SplitOperatorPropagator prop(ff, g, T / static_cast<double>(n_t), Splitting::kinetic_half);
  double worst = 0.0;
  for (int chunk = 0; chunk < 40; ++chunk) {
    prop.evolve(psi, n_t / 40);
    worst = std::max(worst, std::abs(expectation_energy(psi, ff) - e0) / e0);
  }
  return worst;
}

TEST(Propagate, EnergyConservedForGroundStateRun) {
  const GridSpec g = testing::water_grid();
  const IteResult ite = imaginary_time_evolve(testing::synthetic(), g);
  EXPECT_LT(energy_deviation(ite.state, testing::synthetic(), g, 3950.0, 60000), 1e-6);
}

TEST(Propagate, EnergyConservedForDipoleStateRun) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  const IteResult ite = imaginary_time_evolve(ff, g);
  for (char axis : {'x', 'z'}) {
    const DipoleState mu = apply_dipole_exact(ite.state, ff, axis, 3);
    EXPECT_LT(energy_deviation(mu.state, ff, g, 3950.0, 60000), 1e-6) << axis;
  }
}

// The <H> fluctuation is a bounded splitting error that falls as dt^2.
TEST(Propagate, EnergyDeviationFallsAsDtSquared) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  const DipoleState mu = apply_dipole_exact(imaginary_time_evolve(ff, g).state, ff, 'z', 3);
  const double coarse = energy_deviation(mu.state, ff, g, 1000.0, 16000);
  const double fine = energy_deviation(mu.state, ff, g, 1000.0, 32000);
  EXPECT_NEAR(std::log2(coarse / fine), 2.0, 0.3) << coarse << " " << fine;
}

TEST(Propagate, SeriesLayout) {
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  const DipoleState mu = apply_dipole_exact(harmonic_ground_state(g), ff, 'z', 3);
  const auto s = propagate(mu.state, mu.norm_mu_sq, 1234.0, 'z', {100.0, 1000, Splitting::kinetic_half, 10}, ff, g);
  ASSERT_EQ(s.times.size(), 101u);
  ASSERT_EQ(s.values.size(), 101u);
  EXPECT_EQ(s.axis, 'z');
  EXPECT_EQ(s.E0, 1234.0);
  EXPECT_DOUBLE_EQ(s.times.front(), 0.0);
  EXPECT_NEAR(s.times.back(), 100.0, 1e-12);
  for (std::size_t i = 1; i < s.times.size(); ++i) EXPECT_GT(s.times[i], s.times[i - 1]);
  EXPECT_NEAR(std::abs(s.values[0] - mu.norm_mu_sq), 0.0, 1e-12 * mu.norm_mu_sq);
  for (const cplx& a : s.values) EXPECT_LE(std::abs(a), mu.norm_mu_sq * (1.0 + 1e-12));
  EXPECT_TRUE(s.std_error_re.empty());
}

TEST(Propagate, RejectsBadInput) {
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  Wavefunction psi = harmonic_ground_state(g);
  EXPECT_THROW(propagate(psi, 1.0, 0.0, 'z', {10.0, 10, Splitting::kinetic_half, 3}, ff, g), std::invalid_argument);
  psi.amplitudes[g.size() / 2 + 8] *= 2.0;
  EXPECT_THROW(propagate(psi, 1.0, 0.0, 'z', {10.0, 10}, ff, g), std::invalid_argument);
  EXPECT_THROW(SplitOperatorPropagator(ff, g, 0.0, Splitting::kinetic_half), std::invalid_argument);
}

TEST(Propagate, MatchesExactEvolutionOnSmallGrid) {
  const GridSpec g = small_grid();
  const ForceField ff = small_field();
  const Eigenpairs eig = solve(ff, g);
  const DipoleState mu = apply_dipole_exact(eigenstate(eig, 0), ff, 'z', 3);
  const auto s = propagate(mu.state, mu.norm_mu_sq, eig.values[0], 'z', {20.0, 20000, Splitting::kinetic_half, 1000}, ff, g);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const cplx exact = inner_product(mu.state, evolve_exact(eig, mu.state, s.times[i])) * mu.norm_mu_sq;
    ASSERT_LT(std::abs(s.values[i] - exact), 1e-5 * mu.norm_mu_sq) << i;
  }
}

TEST(CompareSplittings, HarmonicFieldAgrees) {
  const GridSpec g = testing::water_grid();
  const ForceField ff = harmonic_synthetic();
  const DipoleState mu = apply_dipole_exact(harmonic_ground_state(g), ff, 'z', 1);
  const double E0 = expectation_energy(harmonic_ground_state(g), ff);
  EXPECT_LT(compare_splittings(mu.state, mu.norm_mu_sq, E0, 'z', {3950.0, 30000}, ff, g), 1e-8);
}

TEST(CompareSplittings, DoubledStepStillAgrees) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  const IteResult ite = imaginary_time_evolve(ff, g);
  const DipoleState mu = apply_dipole_exact(ite.state, ff, 'z', 3);
  EXPECT_LT(compare_splittings(mu.state, mu.norm_mu_sq, ite.E0, 'z', {3950.0, 30000}, ff, g), 1e-4);
}

}  // namespace
}  // namespace soqft

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "soqft/circuits.hpp"
#include "soqft/hamiltonian.hpp"
#include "soqft/oracle.hpp"
#include "soqft/state_prep.hpp"
#include "support.hpp"

namespace soqft {
namespace {

using testing::Gen;

TEST(HarmonicState, SymmetricNormalizedPositive) {
  const GridSpec g = make_grid(4, 1, 10.0);
  const auto a = harmonic_mode_amplitudes(g);
  double s = 0.0;
  for (double v : a) {
    EXPECT_GT(v, 0.0);
    s += v * v;
  }
  EXPECT_NEAR(s, 1.0, 1e-14);
  for (std::size_t x = 1; x < 16; ++x) EXPECT_NEAR(a[x], a[16 - x], 1e-15);
  EXPECT_EQ(std::max_element(a.begin(), a.end()) - a.begin(), 8);
}

TEST(HarmonicState, MatchesHarmonicOracleGroundState) {
  ForceField harmonic = testing::synthetic();
  harmonic.cubic.clear();
  harmonic.quartic.clear();
  const GridSpec g = testing::water_grid();
  const Eigenpairs eig = solve(harmonic, g);
  EXPECT_GT(std::abs(inner_product(harmonic_ground_state(g), eigenstate(eig, 0))), 0.999999);
  EXPECT_NEAR(eig.values[0], 4710.0, 1e-4);
}

TEST(Ite, HarmonicStateIsAFixedPoint) {
  ForceField harmonic = testing::synthetic();
  harmonic.cubic.clear();
  harmonic.quartic.clear();
  const GridSpec g = testing::water_grid();
  const IteResult r = imaginary_time_evolve(harmonic, g);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(std::abs(inner_product(r.state, harmonic_ground_state(g))), 1.0 - 1e-9);
  EXPECT_NEAR(r.E0, 4710.0, 1e-4);
}

TEST(Ite, SyntheticGroundEnergy) {
  const IteResult r = imaginary_time_evolve(testing::synthetic(), testing::water_grid());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.E0, testing::frozen::E0, 1e-4);
  EXPECT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
  ASSERT_GE(r.energies.size(), 2u);
  for (std::size_t i = 1; i < r.energies.size(); ++i) EXPECT_LE(r.energies[i], r.energies[i - 1] + 1e-9) << i;
}

TEST(Ite, InvariantUnderStepHalving) {
  const GridSpec g = testing::water_grid();
  const IteResult a = imaginary_time_evolve(testing::synthetic(), g, {0.01, 1e-8, 1000000});
  const IteResult b = imaginary_time_evolve(testing::synthetic(), g, {0.005, 1e-8, 1000000});
  EXPECT_GT(std::abs(inner_product(a.state, b.state)), 1.0 - 1e-8);
  EXPECT_NEAR(a.E0, b.E0, 1e-4);
}

TEST(Ite, RejectsBadOptionsAndReportsNonConvergence) {
  const GridSpec g = testing::water_grid();
  EXPECT_THROW(imaginary_time_evolve(testing::synthetic(), g, {0.0, 1e-8, 10}), std::invalid_argument);
  EXPECT_THROW(imaginary_time_evolve(testing::synthetic(), g, {0.01, -1.0, 10}), std::invalid_argument);
  EXPECT_THROW(imaginary_time_evolve(testing::synthetic(), g, {0.01, 1e-8, 3}), std::runtime_error);
}

TEST(UcrAngles, UniformAndDelta) {
  const UcrAngles u = ucr_angles(std::vector<double>(8, 1.0 / std::sqrt(8.0)));
  ASSERT_EQ(u.n, 3);
  for (int l = 0; l < 3; ++l) {
    ASSERT_EQ(u.levels[l].size(), std::size_t{1} << l);
    for (double t : u.levels[l]) EXPECT_NEAR(t, std::numbers::pi / 2, 1e-14);
  }
  std::vector<double> delta(8, 0.0);
  delta[0] = 1.0;
  for (const auto& level : ucr_angles(delta).levels)
    for (double t : level) EXPECT_NEAR(t, 0.0, 1e-14);
}

TEST(UcrAngles, RejectsInvalidInput) {
  EXPECT_THROW(ucr_angles({0.6, -0.8}), std::invalid_argument);
  EXPECT_THROW(ucr_angles({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(ucr_angles({1.0, 1.0}), std::invalid_argument);
}

TEST(StatePrepCircuit, DepthFormula) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(state_prep_depth(n), (1L << (n + 1)) - 3);
  EXPECT_EQ(state_prep_depth(4), 29);
  const GridSpec g = make_grid(4, 1, 10.0);
  const Circuit c = build_state_prep(harmonic_mode_amplitudes(g), 0, make_layout(g, false));
  EXPECT_EQ(c.counted_depth(), 29);
}

TEST(StatePrepProperty, PreparesRandomAmplitudes) {
  Gen gen(401);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(2, 5);
    const GridSpec g = make_grid(n, 1, 10.0);
    const auto layout = make_layout(g, false);
    const auto target = gen.nonnegative(n);
    const Circuit c = build_state_prep(target, 0, layout);
    validate(c);
    StateVector s(g.size(), 0.0);
    s[0] = 1.0;
    execute(c, s);
    for (std::size_t x = 0; x < g.size(); ++x) ASSERT_NEAR(std::abs(s[x] - target[x]), 0.0, 1e-12) << n << " " << x;
  }
}

TEST(StatePrepProperty, ActsOnOneRegisterOfAProduct) {
  const GridSpec g = make_grid(3, 2, 8.0);
  const auto layout = make_layout(g, false);
  Gen gen(402);
  const auto a = gen.nonnegative(3), b = gen.nonnegative(3);
  Circuit c = build_state_prep(a, 0, layout);
  c.append(build_state_prep(b, 1, layout));
  StateVector s(g.size(), 0.0);
  s[0] = 1.0;
  execute(c, s);
  for (std::size_t x0 = 0; x0 < 8; ++x0)
    for (std::size_t x1 = 0; x1 < 8; ++x1) ASSERT_NEAR(std::abs(s[x0 * 8 + x1] - a[x0] * b[x1]), 0.0, 1e-12);
}

}  // namespace
}  // namespace soqft

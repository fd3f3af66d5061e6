#include <gtest/gtest.h>

#include <cmath>

#include "soqft/circuits.hpp"
#include "soqft/dipole_encoding.hpp"
#include "soqft/hamiltonian.hpp"
#include "soqft/state_prep.hpp"
#include "support.hpp"

namespace soqft {
namespace {

using testing::Gen;

const IteResult& relaxed() {
  static const IteResult r = imaginary_time_evolve(testing::synthetic(), testing::water_grid());
  return r;
}

double max_abs_dipole(const ForceField& ff, const GridSpec& g, char axis, int order) {
  double m = 0.0;
  for (double v : dipole_on_grid(ff, g, axis, order).values) m = std::max(m, std::abs(v));
  return m;
}

TEST(ExactDipole, LinearDipoleOnHarmonicState) {
  const ForceField ff = parse_forcefield("modes 1\nomega 0 1600\nmu z 0 0.3\n");
  const GridSpec g = make_grid(5, 1, 10.0);
  const DipoleState d = apply_dipole_exact(harmonic_ground_state(g), ff, 'z', 1);
  EXPECT_NEAR(d.norm_mu_sq, 0.09 / 2.0, 1e-10);
  EXPECT_NEAR(d.state.norm_squared(), 1.0, 1e-12);
  EXPECT_THROW(apply_dipole_exact(harmonic_ground_state(g), ff, 'x', 1), std::invalid_argument);
}

TEST(ExactDipole, MatchesPointwiseProduct) {
  Gen gen(701);
  const GridSpec g = make_grid(3, 3, 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ForceField ff = gen.forcefield(3);
    const Wavefunction psi = gen.state(g);
    const DipoleState d = apply_dipole_exact(psi, ff, 'z', 3);
    const auto mu = dipole_on_grid(ff, g, 'z', 3);
    double nrm = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) nrm += std::norm(mu.values[i] * psi.amplitudes[i]);
    ASSERT_NEAR(d.norm_mu_sq, nrm, 1e-12 * nrm);
    for (std::size_t i = 0; i < g.size(); ++i)
      ASSERT_NEAR(std::abs(d.state.amplitudes[i] - mu.values[i] * psi.amplitudes[i] / std::sqrt(nrm)), 0.0, 1e-12);
  }
}

TEST(ChooseBeta, MarginTimesMaximum) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  const double m = max_abs_dipole(ff, g, 'z', 3);
  EXPECT_DOUBLE_EQ(choose_beta(ff, g, 'z', 3), 20.0 * m);
  EXPECT_DOUBLE_EQ(choose_beta(ff, g, 'z', 3, 1.0), m);
  EXPECT_THROW(choose_beta(ff, g, 'z', 3, 0.999), std::invalid_argument);
  EXPECT_THROW(choose_beta(ff, g, 'y', 3), std::invalid_argument);
}

TEST(Probabilistic, SyntheticOverlapExceedsThreshold) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  for (char axis : {'x', 'z'}) {
    const double beta = choose_beta(ff, g, axis, 3);
    const auto p = apply_dipole_probabilistic(relaxed().state, ff, axis, 3, beta);
    EXPECT_GT(p.record.overlap_with_exact, 0.99999) << axis;
    EXPECT_LE(p.record.overlap_with_exact, 1.0 + 1e-15);
    EXPECT_NEAR(p.record.joint_norm, 1.0, 1e-12);
    EXPECT_NEAR(p.record.success_probability + p.record.failure_probability, 1.0, 1e-12);
    EXPECT_NEAR(p.state.norm_squared(), 1.0, 1e-12);
    EXPECT_EQ(p.record.beta, beta);
    EXPECT_EQ(p.record.axis, axis);
  }
}

// P(0) = ||sin(mu/beta) psi||^2 differs from ||mu psi||^2 / beta^2 by a
// relative amount below max(mu/beta)^2 / 3.
TEST(Probabilistic, SuccessProbabilityTracksScaledNorm) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  for (char axis : {'x', 'z'}) {
    for (double margin : {5.0, 20.0}) {
      const double beta = choose_beta(ff, g, axis, 3, margin);
      const double exact = apply_dipole_exact(relaxed().state, ff, axis, 3).norm_mu_sq;
      const auto p = apply_dipole_probabilistic(relaxed().state, ff, axis, 3, beta);
      const double scaled = exact / (beta * beta);
      const double bound = 1.0 / (3.0 * margin * margin);
      EXPECT_NEAR(p.record.success_probability / scaled, 1.0, bound) << axis << " " << margin;
      EXPECT_NEAR(p.record.norm_mu_sq / exact, 1.0, bound) << axis << " " << margin;
    }
  }
}

TEST(Probabilistic, OverlapImprovesWithMargin) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  for (char axis : {'x', 'z'}) {
    double previous = 0.0;
    for (double margin : {5.0, 10.0, 20.0, 50.0}) {
      const auto p = apply_dipole_probabilistic(relaxed().state, ff, axis, 3, choose_beta(ff, g, axis, 3, margin));
      EXPECT_GT(p.record.overlap_with_exact, previous) << axis << " " << margin;
      previous = p.record.overlap_with_exact;
    }
  }
}

TEST(Probabilistic, ExactThetaReproducesDipoleState) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  const DipoleState exact = apply_dipole_exact(relaxed().state, ff, 'z', 3);
  const auto p = apply_dipole_probabilistic(relaxed().state, ff, 'z', 3, choose_beta(ff, g, 'z', 3, 5.0),
                                            ThetaMode::exact_theta);
  EXPECT_NEAR(p.record.overlap_with_exact, 1.0, 1e-12);
  EXPECT_NEAR(p.record.norm_mu_sq / exact.norm_mu_sq, 1.0, 1e-10);
}

TEST(Probabilistic, ThresholdAndArgumentChecks) {
  const GridSpec g = testing::water_grid();
  const ForceField& ff = testing::synthetic();
  const double m = max_abs_dipole(ff, g, 'z', 3);
  EXPECT_THROW(apply_dipole_probabilistic(relaxed().state, ff, 'z', 3, 2.0 * m), std::invalid_argument);
  EXPECT_NO_THROW(apply_dipole_probabilistic(relaxed().state, ff, 'z', 3, 5.0 * m));
  EXPECT_THROW(apply_dipole_probabilistic(relaxed().state, ff, 'z', 3, 5.0 * m, ThetaMode::taylor, 0.1),
               std::invalid_argument);
  EXPECT_THROW(apply_dipole_probabilistic(relaxed().state, ff, 'z', 3, 0.0), std::invalid_argument);
  Wavefunction unnormalized = relaxed().state;
  for (auto& a : unnormalized.amplitudes) a *= 2.0;
  EXPECT_THROW(apply_dipole_probabilistic(unnormalized, ff, 'z', 3, 20.0 * m), std::invalid_argument);
}

// The gate-level circuit puts -sin(mu/beta) psi on the ancilla-|0> branch.
TEST(DipoleCircuit, AncillaBranchAmplitudes) {
  Gen gen(702);
  const GridSpec g = make_grid(3, 3, 8.0);
  const ForceField& ff = testing::synthetic();
  const QubitLayout layout = make_layout(g);
  const double beta = choose_beta(ff, g, 'z', 3);
  const Circuit c = build_dipole_circuit(ff, g, 'z', 3, beta);
  const Wavefunction psi = gen.state(g);
  StateVector s = embed(psi, layout);
  execute(decompose_multicontrolled(c), s);
  const Wavefunction branch = extract(s, layout, g, 0);
  const auto mu = dipole_on_grid(ff, g, 'z', 3);
  double max_err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    max_err = std::max(max_err, std::abs(branch.amplitudes[i] + std::sin(mu.values[i] / beta) * psi.amplitudes[i]));
  EXPECT_LT(max_err, 1e-12);
  double total = 0.0;
  for (const cplx& a : s) total += std::norm(a);
  EXPECT_NEAR(total, 1.0, 1e-12);
  // Decomposition ancillas are returned to |0>.
  for (unsigned bits = 0; bits < 16; ++bits) {
    if ((bits & 0x6u) == 0) continue;
    EXPECT_LT(extract(s, layout, g, bits).norm_squared(), 1e-24) << bits;
  }
}

}  // namespace
}  // namespace soqft

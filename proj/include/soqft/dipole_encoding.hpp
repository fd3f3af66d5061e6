#pragma once

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"

namespace soqft {

struct DipoleApplication {
  char axis = 'z';
  int truncation_order = 3;
  double beta = 0.0;
  double success_probability = 0.0;
  double failure_probability = 0.0;
  /// |<exact normalized mu psi | ancilla-0 branch normalized>|.
  double overlap_with_exact = 0.0;
  /// ||mu psi||^2, estimated as beta^2 * success_probability.
  double norm_mu_sq = 0.0;
  /// Norm of the joint state before projection.
  double joint_norm = 0.0;
};

struct DipoleState {
  Wavefunction state;
  double norm_mu_sq = 0.0;
};

/// mu psi on the grid, renormalized, with ||mu psi||^2 recorded.
DipoleState apply_dipole_exact(const Wavefunction& psi, const ForceField& ff, char axis, int order);

/// beta = margin * max over the grid of |mu|.
double choose_beta(const ForceField& ff, const GridSpec& g, char axis, int order, double margin = 20.0);

/// taylor: theta1 = -mu/beta, run through the gate-level circuit.
/// exact_theta: theta1 = -asin(mu/beta), emulated pointwise, so that the
/// ancilla-0 amplitude is exactly proportional to mu psi.
enum class ThetaMode { taylor, exact_theta };

struct ProbabilisticDipole {
  Wavefunction state;
  DipoleApplication record;
};

/// Ancilla-based dipole encoding followed by projection onto ancilla |0>.
/// Throws when max|mu/beta| exceeds `threshold`.
ProbabilisticDipole apply_dipole_probabilistic(const Wavefunction& psi, const ForceField& ff, char axis, int order,
                                               double beta, ThetaMode mode = ThetaMode::taylor,
                                               double threshold = 0.25);

}  // namespace soqft

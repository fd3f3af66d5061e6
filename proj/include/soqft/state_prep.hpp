#pragma once

#include <vector>

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"

namespace soqft {

/// Normalized exp(-Q^2/2) on one mode's N points.
std::vector<double> harmonic_mode_amplitudes(const GridSpec& g);
/// Product of per-mode harmonic ground states; real and strictly positive.
Wavefunction harmonic_ground_state(const GridSpec& g);

struct IteOptions {
  double dtau = 0.01;  // fs-equivalent imaginary time step
  double tol = 1e-8;   // cm^-1, on successive energies
  long max_iterations = 1000000;
};

struct IteResult {
  Wavefunction state;
  double E0 = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<double> energies;
};

/// Imaginary-time split-operator relaxation starting from the harmonic
/// product state. Throws on non-convergence or persistent energy increase.
IteResult imaginary_time_evolve(const ForceField& ff, const GridSpec& g, const IteOptions& opt = {});

/// Uniformly controlled R_y cascade for a non-negative real amplitude vector
/// of length 2^n. levels[l] holds 2^l angles; level l rotates qubit n-1-l and
/// is indexed by the value of the l more significant qubits.
struct UcrAngles {
  int n = 0;
  std::vector<std::vector<double>> levels;
};

UcrAngles ucr_angles(const std::vector<double>& amplitudes);

}  // namespace soqft

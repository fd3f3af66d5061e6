#pragma once

#include <vector>

#include "soqft/forcefield.hpp"
#include "soqft/grid.hpp"

namespace soqft {

/// Real diagonal over the position grid (values in cm^-1 or debye).
struct DiagonalOperator {
  GridSpec grid;
  std::vector<double> values;
};

/// Per-mode kinetic diagonal over centered momentum labels.
struct KineticDiagonal {
  GridSpec grid;
  std::vector<std::vector<double>> per_mode;
};

/// Per-mode phase factors exp(-i 2 pi c (omega/2) p^2 dt_eff), centered order.
struct KineticPhase {
  GridSpec grid;
  std::vector<std::vector<cplx>> per_mode;
};

/// Adds coeff * prod_{i in key} Q_i to every grid value.
void accumulate_monomial(std::vector<double>& values, const GridSpec& g, const IndexKey& key, double coeff);

/// V/hc = sum omega_i/2 Q_i^2 + cubic + quartic, each stored key once.
DiagonalOperator potential_on_grid(const ForceField& ff, const GridSpec& g);
/// Dipole component with monomials up to `order` (1..3); no constant term.
DiagonalOperator dipole_on_grid(const ForceField& ff, const GridSpec& g, char axis, int order);
/// K/hc = sum omega_i/2 p_i^2.
KineticDiagonal kinetic_on_grid(const std::vector<double>& omega, const GridSpec& g);
KineticPhase kinetic_phase(const GridSpec& g, const std::vector<double>& omega, double dt, bool half);

/// Total kinetic energy of each flattened point in FFT storage order.
std::vector<double> kinetic_energy_fft_order(const std::vector<double>& omega, const GridSpec& g);

/// <psi|K+V|psi> in cm^-1 for a normalized position-space state.
double expectation_energy(const Wavefunction& psi, const ForceField& ff);
double expectation_energy(const Wavefunction& psi, const std::vector<double>& omega, const DiagonalOperator& V);

}  // namespace soqft
